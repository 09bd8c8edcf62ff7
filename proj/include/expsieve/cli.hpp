#pragma once

namespace expsieve {

// Entry point of the command-line driver.  Returns the process exit code:
// 0 on success, 1 when a requested certification could not be completed
// (inconclusive verdicts, unmet clique bounds, failed lemma checks, an
// inconsistent schedule), 2 on usage or input errors.
int run(int argc, const char* const* argv);

}  // namespace expsieve
