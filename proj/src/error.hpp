#pragma once
// Library-wide error type.  Core code throws nlse::Error; the C boundary maps
// the code enum onto nlse_status values one-to-one.

#include <stdexcept>
#include <string>

namespace nlse {

enum class Errc {
  invalid_argument = 1,   // bad value passed by the caller
  precondition = 2,       // documented operation precondition violated
  dimension_mismatch = 3, // incompatible matrix/vector shapes
  not_found = 4,          // unknown fixture / key
  resource = 5,           // over a memory or size budget
  io = 6,                 // file read/write failure
  internal = 7,           // invariant broke inside the library
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace nlse
