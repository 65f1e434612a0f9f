#pragma once

#include <iosfwd>
#include <string>

#include "diskconn/awnn.hpp"
#include "diskconn/oracle.hpp"

namespace diskconn {

// Line-oriented command loop over one connectivity structure. Commands:
//   ADD <x> <y> <r>          -> id=<k> merged=<m> moved=<c>
//   QUERY <a> <b>            -> connected | separate
//   COMPONENTS               -> component count
//   STATS                    -> counters, one key=value per line, fixed order
//   CHECK                    -> ok | violation and mismatch lines
//   GEN <preset> <n> <seed>  -> replays the generated instance as ADDs
// Blank lines and lines starting with '#' are skipped. A malformed line
// prints `error line <n>: <reason>` and stops. Exit code: 0 iff no error
// occurred and every CHECK passed, else 1.
int run_script(std::istream& in, std::ostream& out, AwnnKind kind = AwnnKind::scan);

struct BenchmarkOptions {
    AwnnKind kind = AwnnKind::scan;
    bool compare_naive = false;  // also time the quadratic baseline
    std::string csv_path;        // per-insertion counter trace; empty = none
};

// Builds the structure over one generated instance and reports counters and
// wall time, one key=value per line. Returns 0 on success, 1 when the
// measured run breaks the move bound, 2 on an invalid config or an unwritable
// CSV path.
int run_benchmark(const GeneratorConfig& config, const BenchmarkOptions& options,
                  std::ostream& out);

}  // namespace diskconn
