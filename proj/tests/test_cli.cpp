#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "primorial/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "primorial-lab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = primlab::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("table 2 rows")
{
    const auto r = run({"tables", "--which", "2", "--N", "10,100,1000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.605414195") != std::string::npos);
    CHECK(r.out.find("0.728261065") != std::string::npos);
    CHECK(r.out.find("0.740343901") != std::string::npos);
    CHECK(r.err.find("sieved") != std::string::npos);
}

TEST_CASE("csv and json formats")
{
    const auto csv = run({"--format", "csv", "tables", "--which", "2", "--N", "10"});
    CHECK(csv.out == "N,omega\r\n10,0.605414195\r\n");
    const auto json = run({"--format", "json", "tables", "--which", "2", "--N", "10"});
    CHECK(json.out.find("\"omega\": \"0.605414195\"") != std::string::npos);
    const auto digits = run({"--format", "csv", "--digits", "4", "tables", "--which", "2", "--N", "10"});
    CHECK(digits.out == "N,omega\r\n10,0.6054\r\n");
}

TEST_CASE("verify t2 passes")
{
    const auto r = run({"verify", "--check", "t2", "--range", "599:100000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("failed checks exit with 1")
{
    const auto r = run({"verify", "--check", "omega-bounds"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("twin search output")
{
    const auto r = run({"search-twins", "--max-n", "100"});
    CHECK(r.code == 0);
    CHECK(r.out == "2 3 5\n");
}

TEST_CASE("jobs do not change output bytes")
{
    const auto a = run({"--jobs", "1", "--format", "csv", "search-primes", "--max-n", "60", "--all"});
    const auto b = run({"--jobs", "3", "--format", "csv", "search-primes", "--max-n", "60", "--all"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"--format", "csv", "search-primes", "--max-n", "60", "--all", "--jobs", "2"});
    CHECK(c.out == a.out);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"tables", "--which", "4"}).code == 2);
    CHECK(run({"tables", "--which", "2", "--bogus"}).code == 2);
    CHECK(run({"--k", "3", "lk", "--n", "5"}).code == 2);
    CHECK(run({"--c", "0.2", "lk", "--n", "5"}).code == 2);
    CHECK(run({"verify", "--check", "t2", "--range", "2:598"}).code == 2);
    CHECK(run({"search-primes", "--max-n", "5000"}).code == 1);
}

TEST_CASE("help texts")
{
    const auto top = run({"--help"});
    CHECK(top.code == 0);
    for (const char* sub : {"sieve", "primorial", "isprime", "lk", "theta", "omega", "tables", "verify", "search-primes",
                            "search-twins", "cache"}) {
        CHECK(top.out.find(sub) != std::string::npos);
        const auto h = run({sub, "--help"});
        CHECK(h.code == 0);
        CHECK(h.out.size() > 40);
    }
}

TEST_CASE("single-value subcommands")
{
    const auto ip = run({"--format", "csv", "isprime", "30031", "p5#-1", "p24#-1"});
    CHECK(ip.code == 0);
    CHECK(ip.out.find("30031,5,composite,trial_division,59") != std::string::npos);
    CHECK(ip.out.find("p5#-1,4,prime,trial_division,") != std::string::npos);
    CHECK(ip.out.find("p24#-1,35,probable_prime,bpsw,") != std::string::npos);
    CHECK(run({"isprime", "12x"}).code == 2);

    const auto lk = run({"--format", "csv", "--c", "1", "lk", "--n", "2"});
    CHECK(lk.code == 0);
    CHECK(lk.out.find("0.685714286") != std::string::npos);

    const auto pr = run({"--format", "csv", "primorial", "--n", "5", "--show"});
    CHECK(pr.out.find(",2310") != std::string::npos);
    CHECK(run({"primorial", "--n", "3", "--N", "3", "--g", "1"}).code == 2);

    const auto sv = run({"--format", "csv", "sieve", "--x", "10,100", "--nth", "10"});
    CHECK(sv.out.find("x,10,4,") != std::string::npos);
    CHECK(sv.out.find("nth=10,29,10,") != std::string::npos);

    const auto th = run({"--format", "csv", "--k", "2", "theta", "--x-cutoff", "5", "--n", "3"});
    CHECK(th.out.find(",4,") != std::string::npos);

    const auto om = run({"omega", "--bounds"});
    CHECK(om.out.find("0.660162627") != std::string::npos);
}

TEST_CASE("cache subcommands")
{
    const std::string path = "/tmp/primorial_lab_cli_cache_test.jsonl";
    std::remove(path.c_str());
    CHECK(run({"--cache", path, "search-primes", "--max-n", "30"}).code == 0);
    const auto insp = run({"--cache", path, "--format", "csv", "cache", "inspect"});
    CHECK(insp.out.find(path + ",60,30,") != std::string::npos);
    CHECK(run({"--cache", path, "cache", "verify"}).code == 0);
    {
        std::ofstream out(path, std::ios::app);
        out << "garbage\n";
    }
    CHECK(run({"--cache", path, "cache", "inspect"}).code == 1);
    std::remove(path.c_str());
}
