#pragma once

// The `ordo` command line: learn, insert, reorder, check, eval.

#include <iosfwd>
#include <string_view>
#include <string>
#include <vector>

namespace ordo::cli {

enum ExitCode : int { kOk = 0, kParse = 1, kIo = 2, kNoRegion = 3, kViolations = 4 };

/// Runs one command. `in` supplies the insert snippet when --snippet is
/// absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Re-indents `snippet` so its least indented line starts with `indent`;
/// the first line gets no indent when `indent_first` is false.
std::string indent_snippet(std::string_view snippet, std::string_view indent, bool indent_first);

}  // namespace ordo::cli
