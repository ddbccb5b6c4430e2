#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polyprod/cli.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace polyprod;

namespace {

struct Example {
    std::string command;
    std::string expected;
};

// Splits on spaces; double quotes group words.
auto split_args(const std::string& line) -> std::vector<std::string>
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, any = false;
    for (char c : line) {
        if (c == '"') {
            quoted = ! quoted;
            any = true;
        }
        else if (c == ' ' && ! quoted) {
            if (any)
                out.push_back(cur);
            cur.clear();
            any = false;
        }
        else {
            cur += c;
            any = true;
        }
    }
    if (any)
        out.push_back(cur);
    return out;
}

// Each console block holds one "$ polyprod ..." line followed by its output.
auto examples(const std::string& path) -> std::vector<Example>
{
    std::ifstream in(path);
    REQUIRE(in);
    std::vector<Example> out;
    std::string line;
    bool in_block = false;
    while (std::getline(in, line)) {
        if (! in_block) {
            in_block = line == "```console";
            continue;
        }
        if (line == "```") {
            in_block = false;
            continue;
        }
        if (line.rfind("$ polyprod", 0) == 0)
            out.push_back({line.substr(2), ""});
        else {
            REQUIRE(! out.empty());
            out.back().expected += line + "\n";
        }
    }
    return out;
}

} // namespace

TEST_CASE("README examples reproduce exactly")
{
    auto all = examples(POLYPROD_README);
    CHECK(all.size() >= 10);
    for (const auto& e : all) {
        CAPTURE(e.command);
        auto args = split_args(e.command);
        REQUIRE(args.front() == "polyprod");
        args.erase(args.begin());
        std::ostringstream out, err;
        (void)run_cli(args, out, err);
        CHECK(out.str() + err.str() == e.expected);
    }
}
