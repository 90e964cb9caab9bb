#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string command = std::string(LTS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Writes `text` to a fresh file in the temp directory and returns its path.
std::string program(const std::string& name, const std::string& text) {
    fs::path dir = fs::temp_directory_path() / "lts-cli-tests";
    fs::create_directories(dir);
    fs::path path = dir / (name + ".lts");
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check prints the judgment") {
    Run r = run("check " + program("bool-or-num", "(lambda (x : Top) (if (number? x) #t (boolean? x)))"));
    CHECK(r.code == 0);
    CHECK(r.out == "(-> Top Boolean : (U Number Boolean)) ; tt\n");
}

TEST_CASE("check reports type errors with the rule") {
    Run r = run("check " + program("bad-add1", "(lambda (x : (U Number Boolean)) (add1 x))"));
    CHECK(r.code == 1);
    CHECK(r.out.find("type error") != std::string::npos);
    CHECK(r.out.find("T-App") != std::string::npos);
}

TEST_CASE("check in extended mode") {
    std::string path = program("reduct", "(if (number? #f) (add1 #f) (not #f))");
    CHECK(run("check " + path).code == 1);
    Run r = run("check --extended " + path);
    CHECK(r.code == 0);
    CHECK(r.out == "Boolean ; none\n");
}

TEST_CASE("refinement directives and the --delta flag") {
    const std::string body = "(lambda (f : (-> (Refinement even?) Number)) (lambda (n : Number) (if (even? n) (f n) n)))";
    Run r = run("check " + program("even-directive", "(declare-refinement even?)\n" + body));
    CHECK(r.code == 0);
    CHECK(r.out == "(-> (-> (Refinement even?) Number) (-> Number Number)) ; tt\n");
    CHECK(run("check --delta even? " + program("even-flag", body)).code == 0);
    CHECK(run("check --delta odd? " + program("even-wrong", body)).code == 1);
    CHECK(run("check --delta frob " + program("even-frob", body)).code == 2);
    Run bad = run("check " + program("even-else", "(declare-refinement even?)\n"
                                                  "(lambda (f : (-> (Refinement even?) Number)) "
                                                  "(lambda (n : Number) (if (even? n) n (f n))))"));
    CHECK(bad.code == 1);
}

TEST_CASE("parse errors exit with 2 and a position") {
    Run r = run("check " + program("truncated", "(if"));
    CHECK(r.code == 2);
    CHECK(r.out.find("parse error") != std::string::npos);
    CHECK(r.out.find("1:4") != std::string::npos);
}

TEST_CASE("eval and trace") {
    std::string path = program("run", "((lambda (x : Number) (add1 x)) 41)");
    Run r = run("eval " + path);
    CHECK(r.code == 0);
    CHECK(r.out == "42\n");
    r = run("trace " + path);
    CHECK(r.code == 0);
    CHECK(r.out == "0: ((lambda (x : Number) (add1 x)) 41)\n1: (add1 41)\n2: 42\n");
    r = run("eval --fuel 1 " + path);
    CHECK(r.code == 1);
    CHECK(r.out.find("out of fuel after 1 steps") != std::string::npos);
}

TEST_CASE("ill-typed programs run only when unchecked") {
    std::string path = program("stuck", "(add1 #t)");
    CHECK(run("eval " + path).code == 1);
    Run r = run("eval --unchecked " + path);
    CHECK(r.code == 1);
    CHECK(r.out.find("stuck") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check").code == 2);
    CHECK(run("check /nonexistent/file.lts").code == 2);
    CHECK(run("fuzz --count 0").code == 2);
    CHECK(run("fuzz --depth 0").code == 2);
    CHECK(run("fuzz --count abc").code == 2);
}

TEST_CASE("fuzz writes a JSON report") {
    fs::path json = fs::temp_directory_path() / "lts-cli-tests" / "report.json";
    fs::remove(json);
    Run r = run("fuzz --count 200 --seed 3 --depth 5 --json " + json.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("generated 200 terms") != std::string::npos);
    std::ifstream in(json);
    REQUIRE(in);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["generated"] == 200);
    CHECK(j["seed"] == 3);
    CHECK(j["failures"].is_array());
    CHECK(j["coverage"].is_object());
    CHECK(j["coverage"]["T-If"].get<int>() > 0);
    CHECK(j["elapsed_ms"].is_number());
}

}
