#pragma once

namespace cliquesdp {

// Entry point of the clique-sdp command-line tool.
// Exit codes: 0 success, 2 parse error, 3 coverage error, 4 missing or
// infeasible solution, 5 separator assumption violated, 6 multiplier
// hypothesis failed, 7 solver failure.
int run_cli(int argc, const char* const* argv);

}  // namespace cliquesdp
