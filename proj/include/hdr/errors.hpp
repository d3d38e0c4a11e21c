#pragma once

#include <stdexcept>
#include <string>

namespace hdr {

// Precondition violated by the caller (bad vertex id, malformed edge set, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the destroy operator when fewer than two deletable edges remain.
class DestroyInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdr
