#pragma once

#include <stdexcept>
#include <string>

namespace catalab {

/// Base class for all domain errors raised by the workbench.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration or size guard exceeded (desk-scale limits).
struct guard_error : error {
  using error::error;
};

/// Malformed codeword, unknown scheme, or unregistered codec.
struct codec_error : error {
  using error::error;
};

/// A sample point lies outside the subspace it claims to come from.
struct sample_error : error {
  using error::error;
};

/// A solver's claimed class disagrees with the instance being solved.
struct class_mismatch_error : error {
  using error::error;
};

/// Catalyst audit refused (e.g. intelligence not matched across runs).
struct audit_error : error {
  using error::error;
};

/// Register-program arity/shape violations.
struct vm_error : error {
  using error::error;
};

}  // namespace catalab
