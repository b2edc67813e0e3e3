#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

struct CliFixture {
    fs::path dir;

    CliFixture() {
        dir = fs::temp_directory_path() /
              ("coread_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~CliFixture() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    static int& counter() {
        static int n = 0;
        return n;
    }

    fs::path file(const std::string& name, const std::string& text) const {
        fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        out << text;
        return p;
    }

    std::string slurp(const fs::path& p) const {
        std::ifstream in(p, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    CliResult run(const std::string& args) const {
        fs::path out_path = dir / "stdout.txt";
        fs::path err_path = dir / "stderr.txt";
        std::string cmd = std::string(COREAD_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
        int rc = std::system(cmd.c_str());
        CliResult r;
        r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        std::ifstream out(out_path, std::ios::binary), err(err_path, std::ios::binary);
        std::ostringstream so, se;
        so << out.rdbuf();
        se << err.rdbuf();
        r.out = so.str();
        r.err = se.str();
        return r;
    }
};

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos)
            kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

const char* kSummaryFixture =
    R"({"doi":"10.1/a","type":"article","readers":{"status":{"PhD":3,"Professor":2},"country":{"USA":4,"Atlantis":1}}}
{"doi":"10.1/b","type":"article","readers":{"status":{"PhD":1},"discipline":{"Physics":2}}}
{"doi":"10.1/r","type":"review","readers":{"country":{"Germany":0,"Brazil":2}}}
)";

// Two status triangles joined by one bridge edge C-D.
const char* kBridgeFixture =
    R"({"doi":"10.2/p1","type":"article","readers":{"status":{"A":1,"B":1,"C":1}}}
{"doi":"10.2/p2","type":"article","readers":{"status":{"D":1,"E":1,"F":1}}}
{"doi":"10.2/p3","type":"article","readers":{"status":{"C":1,"D":1}}}
)";

// Same two triangles but no bridge: disconnected coupling graph.
const char* kSplitFixture =
    R"({"doi":"10.2/p1","type":"article","readers":{"status":{"A":1,"B":1,"C":1}}}
{"doi":"10.2/p2","type":"article","readers":{"status":{"D":1,"E":1,"F":1}}}
)";

const char* kCountryFixture =
    R"({"doi":"10.3/n1","type":"article","readers":{"country":{"USA":1,"Germany":1,"France":1}}}
{"doi":"10.3/n2","type":"article","readers":{"country":{"United States":2,"Germany":1}}}
)";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("summarize describes a records file") {
    CliFixture fx;
    auto input = fx.file("records.jsonl", kSummaryFixture);
    auto r = fx.run("summarize --input " + input.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("article records: 2") != std::string::npos);
    CHECK(r.out.find("review records: 1") != std::string::npos);
    CHECK(r.out.find("dropped zero-count entries: 1") != std::string::npos);

    auto rn = fx.run("summarize --normalize-countries --input " + input.string());
    CHECK(rn.code == 0);
    CHECK(rn.out.find("unrecognized country labels: 1") != std::string::npos);
}

TEST_CASE("summarize exit codes distinguish I/O from analysis") {
    CliFixture fx;
    auto empty = fx.file("empty.jsonl", "");
    CHECK(fx.run("summarize --input " + empty.string()).code == 0);

    auto missing = fx.run("summarize --input " + (fx.dir / "nope.jsonl").string());
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    auto bad = fx.file("bad.jsonl", "{\"doi\":\"10.1/x\"\n");
    auto r = fx.run("summarize --input " + bad.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("line 1") != std::string::npos);

    auto unknown = fx.file("odd.dat", "{}");
    CHECK(fx.run("summarize --input " + unknown.string()).code == 2);
}

TEST_CASE("analyze reports the bridged two-community network") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    auto r = fx.run("analyze --dimension status --report kv --input " + input.string());
    REQUIRE(r.code == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["records"] == "3");
    CHECK(kv["dimension"] == "status");
    CHECK(kv["graph_vertices"] == "6");
    CHECK(kv["graph_edges"] == "7");
    CHECK(kv["graph_loops"] == "0");
    CHECK(kv["component_vertices"] == "6");
    CHECK(kv["dropped_labels"] == "");
    CHECK(kv["communities"] == "2");
    CHECK(kv["community_sizes"] == "3;3");
    CHECK(kv["number_of_vertices"] == "6");
    CHECK(std::stod(kv["modularity"]) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(std::stod(kv["density"]) == doctest::Approx(7.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("analyze restricts everything to the largest component") {
    CliFixture fx;
    auto input = fx.file("split.jsonl", kSplitFixture);
    auto r = fx.run("analyze --dimension status --report kv --input " + input.string());
    REQUIRE(r.code == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["graph_vertices"] == "6");
    CHECK(kv["component_vertices"] == "3");
    CHECK(kv["dropped_labels"] == "D;E;F");
    CHECK(kv["number_of_vertices"] == "3");
    CHECK(kv["density"] == "1");
    CHECK(kv["modularity"] == "0");
}

TEST_CASE("analyze text report carries the labeled rows") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    auto r = fx.run("analyze --dimension status --input " + input.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("records: 3") != std::string::npos);
    CHECK(r.out.find("communities: 2 (sizes: 3, 3)") != std::string::npos);
    for (const char* row :
         {"Number of vertices", "Average degree", "Degree centralization",
          "Density", "Closure", "Average distance",
          "Standard deviation of average distance", "Diameter", "Compactness",
          "Modularity"})
        CHECK(r.out.find(row) != std::string::npos);
}

TEST_CASE("analyze output is deterministic for a fixed seed") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    auto outputs = [&](const char* tag) {
        fs::path part = fx.dir / (std::string("part") + tag);
        fs::path net = fx.dir / (std::string("net") + tag);
        fs::path map = fx.dir / (std::string("map") + tag);
        fs::path vnet = fx.dir / (std::string("vnet") + tag);
        auto r = fx.run("analyze --dimension status --seed 7 --report kv --input " +
                        input.string() + " --partition-out " + part.string() +
                        " --pajek-out " + net.string() + " --vos-map-out " +
                        map.string() + " --vos-net-out " + vnet.string());
        REQUIRE(r.code == 0);
        return std::make_tuple(r.out, fx.slurp(part), fx.slurp(net),
                               fx.slurp(map), fx.slurp(vnet));
    };
    auto first = outputs("1");
    auto second = outputs("2");
    CHECK(first == second);
    CHECK(std::get<2>(first).find("*Vertices 6") != std::string::npos);
    CHECK(std::get<3>(first).find("id\tlabel\tcluster\tweight") != std::string::npos);
}

TEST_CASE("analyze normalizes country labels unless told otherwise") {
    CliFixture fx;
    auto input = fx.file("countries.jsonl", kCountryFixture);
    auto merged = fx.run("analyze --dimension country --report kv --input " +
                         input.string());
    REQUIRE(merged.code == 0);
    auto kv = parse_kv(merged.out);
    CHECK(kv["graph_vertices"] == "3"); // USA + United States fold into US
    CHECK(kv["graph_loops"] == "1");

    auto verbatim = fx.run(
        "analyze --dimension country --report kv --no-normalize-countries --input " +
        input.string());
    REQUIRE(verbatim.code == 0);
    auto kv2 = parse_kv(verbatim.out);
    CHECK(kv2["graph_vertices"] == "4");
}

TEST_CASE("analyze validation and analysis failures use distinct exit codes") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    std::string base = "analyze --input " + input.string();
    CHECK(fx.run(base).code == 2);                                  // no dimension
    CHECK(fx.run(base + " --dimension status --min-count 0").code == 2);
    CHECK(fx.run(base + " --dimension status --loop-min-readers 1").code == 2);
    CHECK(fx.run(base + " --dimension status --report yaml").code == 2);
    CHECK(fx.run(base + " --dimension flavor").code == 2);
    CHECK(fx.run(base + " --bogus-flag").code == 2);
    CHECK(fx.run("analyze --dimension status").code == 2);          // no input

    // The fixture has no discipline counts: an analysis error, not usage.
    auto r = fx.run(base + " --dimension discipline");
    CHECK(r.code == 1);
    CHECK(r.err.find("discipline") != std::string::npos);
}

TEST_CASE("global usage errors exit 2 and help exits 0") {
    CliFixture fx;
    CHECK(fx.run("").code == 2);          // a subcommand is required
    CHECK(fx.run("frobnicate").code == 2);
    CHECK(fx.run("--help").code == 0);
    CHECK(fx.run("analyze --help").code == 0);
}

TEST_CASE("config files fill in flags without overriding them") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    auto cfg = fx.file("run.cfg", "# analysis defaults\n"
                                  "input = " + input.string() + "\n"
                                  "dimension = status\n"
                                  "report = kv\n"
                                  "seed = 7\n");
    auto r = fx.run("analyze --config " + cfg.string());
    REQUIRE(r.code == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["communities"] == "2");

    // An explicit flag beats the config value.
    auto text = fx.run("analyze --config " + cfg.string() + " --report text");
    REQUIRE(text.code == 0);
    CHECK(text.out.find("Number of vertices") != std::string::npos);
    CHECK(text.out.find("number_of_vertices=") == std::string::npos);
}

TEST_CASE("config files reject unknown keys and malformed lines") {
    CliFixture fx;
    auto input = fx.file("bridge.jsonl", kBridgeFixture);
    auto bad_key = fx.file("bad1.cfg", "inptu = x\n");
    auto r1 = fx.run("analyze --dimension status --input " + input.string() +
                     " --config " + bad_key.string());
    CHECK(r1.code == 2);
    CHECK(r1.err.find("unknown key") != std::string::npos);

    auto bad_line = fx.file("bad2.cfg", "just words\n");
    auto r2 = fx.run("analyze --dimension status --input " + input.string() +
                     " --config " + bad_line.string());
    CHECK(r2.code == 2);
    CHECK(r2.err.find("line 1") != std::string::npos);

    auto missing = fx.run("analyze --dimension status --input " + input.string() +
                          " --config " + (fx.dir / "none.cfg").string());
    CHECK(missing.code == 2);
}

TEST_CASE("config booleans reach the normalization switch") {
    CliFixture fx;
    auto input = fx.file("countries.jsonl", kCountryFixture);
    auto cfg = fx.file("verbatim.cfg", "input = " + input.string() + "\n"
                                       "dimension = country\n"
                                       "report = kv\n"
                                       "normalize-countries = false\n");
    auto r = fx.run("analyze --config " + cfg.string());
    REQUIRE(r.code == 0);
    CHECK(parse_kv(r.out)["graph_vertices"] == "4");
}

TEST_CASE("export normalizes tolerant pajek input") {
    CliFixture fx;
    auto net = fx.file("in.net", "*Vertices 3\n1 A\n2 B\n3 C\n"
                                 "*Arcs\n1 2 1\n2 1 1\n1 3 2.5\n2 3 1\n3 3 2\n");
    fs::path out = fx.dir / "out.net";
    auto r = fx.run("export --input " + net.string() + " --pajek-out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(fx.slurp(out) ==
          "*Vertices 3\n"
          "1 \"A\"\n"
          "2 \"B\"\n"
          "3 \"C\"\n"
          "*Edges\n"
          "1 2 2\n"
          "1 3 2.5\n"
          "2 3 1\n"
          "3 3 2\n");
}

TEST_CASE("export emits paired VOSviewer files without self-loops") {
    CliFixture fx;
    auto net = fx.file("in.net", "*Vertices 3\n1 \"A\"\n2 \"B\"\n3 \"C\"\n"
                                 "*Edges\n1 2 1\n2 3 1\n3 3 2\n");
    auto part = fx.file("part.txt", "\"A\"\t0\n\"B\"\t0\n\"C\"\t1\n");
    fs::path map = fx.dir / "map.txt";
    fs::path vnet = fx.dir / "vnet.txt";
    auto r = fx.run("export --input " + net.string() + " --partition " +
                    part.string() + " --vos-map-out " + map.string() +
                    " --vos-net-out " + vnet.string());
    REQUIRE(r.code == 0);
    CHECK(fx.slurp(map) == "id\tlabel\tcluster\tweight\n"
                           "1\tA\t1\t0\n"
                           "2\tB\t1\t0\n"
                           "3\tC\t2\t0\n");
    CHECK(fx.slurp(vnet) == "1\t2\t1\n2\t3\t1\n");
}

TEST_CASE("export usage errors exit 2") {
    CliFixture fx;
    auto net = fx.file("in.net", "*Vertices 2\n1 \"A\"\n2 \"B\"\n*Edges\n1 2 1\n");
    CHECK(fx.run("export --input " + net.string()).code == 2); // no outputs
    CHECK(fx.run("export --pajek-out x.net").code == 2);       // no input

    fs::path map = fx.dir / "m.txt";
    fs::path vnet = fx.dir / "n.txt";
    std::string vos = "export --input " + net.string() + " --vos-map-out " +
                      map.string() + " --vos-net-out " + vnet.string();
    CHECK(fx.run(vos).code == 2); // partition required

    auto stranger = fx.file("other.txt", "\"A\"\t0\n\"Z\"\t1\n");
    auto r = fx.run(vos + " --partition " + stranger.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("not a vertex") != std::string::npos);

    auto partial = fx.file("partial.txt", "\"A\"\t0\n");
    CHECK(fx.run(vos + " --partition " + partial.string()).code == 2);

    auto broken = fx.file("broken.net", "*Vertices 2\n1 \"A\"\n2 \"B\"\n*Edges\n0 1 1\n");
    CHECK(fx.run("export --input " + broken.string() + " --pajek-out " +
                 (fx.dir / "o.net").string())
              .code == 2);
}

TEST_CASE("fetch insists on its required flags") {
    CliFixture fx;
    CHECK(fx.run("fetch").code == 2);
    auto dois = fx.file("dois.txt", "10.1/a\n");
    CHECK(fx.run("fetch --dois " + dois.string()).code == 2); // no base-url
    CHECK(fx.run("fetch --dois " + dois.string() +
                 " --base-url http://127.0.0.1:9 --cache-dir " +
                 (fx.dir / "cache").string() + " --rate 0")
              .code == 2);
    auto blank = fx.file("blank.txt", "\n  \n");
    CHECK(fx.run("fetch --dois " + blank.string() +
                 " --base-url http://127.0.0.1:9 --cache-dir " +
                 (fx.dir / "cache").string())
              .code == 2);
}

} // TEST_SUITE
