#pragma once

#include <stdexcept>
#include <string>

namespace prat {

enum class Errc {
  NonCoprimeModuli,
  InvalidCongruence,
  ResidueNotCoprime,
  InvalidWindow,
  EmptyWindow,
  WindowTooLarge,
  InvalidGrhExponents,
  PerfectSquareInput,
  NotFundamental,
  NotSquarefree,
  PrecisionFailure,
  EvenOrSmallPrime,
  UnsupportedPrime,
  NotFlanked,
  InvalidConfig,
  ParseError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace prat
