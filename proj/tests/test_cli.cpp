// Exit-code and determinism contract of the gfp binary.
// Usage: cli_tests <path-to-gfp> <data-dir>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& command) {
    RunResult r;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << command << "\n";
        std::exit(1);
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int failures = 0;

void expect_code(const std::string& command, int want) {
    auto r = run(command);
    if (r.code != want) {
        std::cerr << "FAIL: expected exit " << want << ", got " << r.code << " for: " << command << "\n";
        ++failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: cli_tests <gfp-binary> <data-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];
    const std::string path_spec = data + "/path_semicircular.json";

    // 0: success and verdict-holds paths
    expect_code(bin + " nc enumerate --n 3", 0);
    expect_code(bin + " graph --spec " + path_spec, 0);
    expect_code(bin + " compute --spec " + path_spec + " --what expectation --var x", 0);
    expect_code(bin + " check --spec " + path_spec + " --what gfree --var x --var y --order 4", 0);

    expect_code(bin + " compute --spec " + path_spec + " --what mseries --var x --var y --order 3", 0);
    expect_code(bin + " nc altunion --n 2 --pi \"1,2\" --theta \"1|2\"", 0);

    // 1: verdict fails
    expect_code(bin + " check --spec " + path_spec + " --what gfree --var z --var z --order 4", 1);
    expect_code(bin + " check --spec " + path_spec + " --what semicircular --var z --order 2", 0);
    expect_code(bin + " check --spec " + path_spec + " --what circular --var x --var y --order 4", 0);
    expect_code(bin + " check --spec " + path_spec + " --what rdiagonal --var x --order 4", 1);

    // 2: parse errors (bad flags, bad partitions, unknown keys, bad files)
    expect_code(bin + " nc kreweras --n 8", 2);
    expect_code(bin + " nc kreweras --n 4 --pi \"1,3|2,4\"", 2);
    expect_code(bin + " nc moebius --n 3 --from top --to \"1,2\"", 2);
    expect_code(bin + " graph --spec " + data + "/bad_key.json", 2);
    expect_code(bin + " graph --spec " + data + "/no_such_file.json", 2);
    expect_code(bin + " compute --spec " + path_spec + " --what nonsense --var x --order 2", 2);

    // 3: size cap, including the environment override (downward and upward)
    expect_code(bin + " nc enumerate --n 15", 3);
    expect_code("GFP_NC_CAP=5 " + bin + " nc enumerate --n 6", 3);
    expect_code("GFP_NC_CAP=5 " + bin + " nc enumerate --n 5", 0);
    expect_code("GFP_NC_CAP=junk " + bin + " nc enumerate --n 3", 2);

    // 4: invalid graph / problem semantics
    expect_code(bin + " graph --spec " + data + "/bad_loop.json", 4);
    expect_code(bin + " graph --spec " + path_spec + " --disjoint 1,3 2", 4);  // inadmissible word

    // 5: unknown variable
    expect_code(bin + " compute --spec " + path_spec + " --what moments --var nope --order 2", 5);

    // 6: order above the cap
    expect_code(bin + " compute --spec " + path_spec + " --what moments --var x --order 9", 6);
    expect_code(bin + " check --spec " + path_spec + " --what gfree --var x --var y --order 9", 6);

    // output determinism: identical bytes across two runs
    auto a = run(bin + " compute --spec " + path_spec + " --what rseries --var x --order 4");
    auto b = run(bin + " compute --spec " + path_spec + " --what rseries --var x --order 4");
    if (a.out.empty() || a.out != b.out) {
        std::cerr << "FAIL: rseries output is not byte-stable\n";
        ++failures;
    }

    if (failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << failures << " failure(s)\n";
    return 1;
}
