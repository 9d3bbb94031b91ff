#ifndef PATENTCITE_CLI_HPP
#define PATENTCITE_CLI_HPP

namespace patentcite {

// Full command-line entry point; argv[0] is the program name. Returns the
// process exit code: 0 success, 1 usage error, 2 data or model error.
int run(int argc, const char* const* argv);

} // namespace patentcite

#endif // PATENTCITE_CLI_HPP
