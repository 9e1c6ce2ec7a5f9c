#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bisemi/cli.hpp"

namespace golden {

struct Case {
  std::string name;
  std::vector<std::string> args;
};

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

inline std::string dir() { return BISEMI_GOLDEN_DIR; }

inline std::vector<Case> load_cases() {
  std::ifstream in(dir() + "/cases.txt");
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    Case c{line.substr(0, bar), {}};
    std::istringstream words(line.substr(bar + 1));
    for (std::string w; words >> w;) {
      for (auto at = w.find("@DIR@"); at != std::string::npos; at = w.find("@DIR@")) w.replace(at, 5, dir());
      c.args.push_back(w);
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

inline Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.status = bisemi::cli::main_entry(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

inline std::string expected_path(const Case& c) { return dir() + "/" + c.name + ".out"; }

inline bool read_expected(const Case& c, std::string& body) {
  std::ifstream in(expected_path(c), std::ios::binary);
  if (!in) return false;
  body.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

/// "group verb" of a case, taken from the first two non-option words.
inline std::string command_of(const Case& c) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < c.args.size() && words.size() < 2; ++i) {
    if (c.args[i].rfind("--", 0) == 0) {
      ++i;  // skip the option's value
      continue;
    }
    words.push_back(c.args[i]);
  }
  return words.size() == 2 ? words[0] + " " + words[1] : "";
}

}  // namespace golden
