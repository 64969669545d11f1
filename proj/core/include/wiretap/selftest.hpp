#pragma once

#include <iosfwd>

namespace wiretap {

/// Fast built-in consistency battery (a few seconds): incremental-update
/// identities against from-scratch recomputation, selection-quality ordering
/// on small instances, and byte-level determinism of a miniature experiment.
/// Prints one line per check to `os`; returns true iff every check passed.
bool run_selftest(std::ostream& os);

}  // namespace wiretap
