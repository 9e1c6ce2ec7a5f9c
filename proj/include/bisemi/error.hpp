#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bisemi {

/// Domain error categories raised by library operations.
enum class Errc {
  NotTriangular,
  SingularDiagonal,
  DivisionByZero,
  IncompatibleRadicand,
  InvalidSpec,
  PlaceOutOfRange,
  AsymmetricSpecs,
  UnknownRule,
  NegativeInput,
  GridMismatch,
  WrongRule,
  UnknownClass,
  PoleAtOne,
  SearchExhausted,
  SubcriticalEnergy,
  ClassOutOfRange,
  SingularCurve,
  BadReduction,
  EvenCharacteristic,
  NotPrime,
  ParseError,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NotTriangular: return "NotTriangular";
    case Errc::SingularDiagonal: return "SingularDiagonal";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompatibleRadicand: return "IncompatibleRadicand";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::PlaceOutOfRange: return "PlaceOutOfRange";
    case Errc::AsymmetricSpecs: return "AsymmetricSpecs";
    case Errc::UnknownRule: return "UnknownRule";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::WrongRule: return "WrongRule";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::SubcriticalEnergy: return "SubcriticalEnergy";
    case Errc::ClassOutOfRange: return "ClassOutOfRange";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::BadReduction: return "BadReduction";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bisemi
