#ifndef INDEXFORGE_TESTS_TEST_UTIL_HPP_INCLUDED
#define INDEXFORGE_TESTS_TEST_UTIL_HPP_INCLUDED

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace tsupport {

inline std::filesystem::path fixtures_dir() { return INDEXFORGE_FIXTURES_DIR; }
inline std::filesystem::path data_dir() { return INDEXFORGE_DATA_DIR; }
inline std::filesystem::path work_dir() {
    std::filesystem::path p(INDEXFORGE_WORK_DIR);
    std::filesystem::create_directories(p);
    return p;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // combined stdout+stderr
};

/// Runs the built CLI with the given arguments, capturing output.
inline CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::filesystem::path log = work_dir() / "cli_output.txt";
    std::string command = env_prefix + (env_prefix.empty() ? "" : " ") + INDEXFORGE_CLI +
                          " " + args + " > " + log.string() + " 2>&1";
    int status = std::system(command.c_str());
    CliResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.output = slurp(log);
    return r;
}

} // namespace tsupport

#endif
