#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tam {

enum class Errc {
  SelfLoop,
  IsolatedAgent,
  UnknownAgent,
  DuplicateAgent,
  ThetaOutOfRange,
  InvalidRational,
  Parse,
  MissingTheta,
  UnknownAtom,
  EmptyProduct,
  NotAPartition,
  NotFullRelation,
  IndexOutOfRange,
  CapExceeded,
  GenerationFailed,
  NoMatchingState,
  AmbiguousState,
  NondeterminismDetected,
  PreconditionNotConjunctive,
  NotAtomState,
  InvalidActionModel,
  InvalidAutomaton,
  InvalidDocument,
  Io,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Carries the byte offset into the formula text where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tam
