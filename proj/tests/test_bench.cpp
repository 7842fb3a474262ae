#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcon/bench.hpp"
#include "pcon/memtrack_impl.hpp"  // sole impl TU of the test binary
#include "support.hpp"

using namespace pcon;

namespace {

// Minimal RFC-4180 row splitter for round-trip checks.
std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

bool same_result(const RunRecord& a, const RunRecord& b) {
  return a.dataset == b.dataset && a.method == b.method &&
         a.params == b.params && a.seed == b.seed &&
         a.conductance == b.conductance && a.size == b.size &&
         a.volume == b.volume && a.nmi == b.nmi;
}

}  // namespace

TEST_CASE("parse_method maps every public name", "[bench]") {
  CHECK(parse_method("pcon_core") == Method::kPconCore);
  CHECK(parse_method("pcon_de") == Method::kPconDe);
  CHECK(parse_method("asc_sweep") == Method::kAscSweep);
  CHECK(parse_method("trw") == Method::kTrw);
  CHECK(parse_method("ppr") == Method::kPpr);
  CHECK(parse_method("hk") == Method::kHk);
  for (const char* name :
       {"pcon_core", "pcon_de", "asc_sweep", "trw", "ppr", "hk"})
    CHECK(method_name(parse_method(name)) == std::string(name));

  CHECK_THROWS_AS(parse_method("PCON_CORE"), UsageError);
  CHECK_THROWS_AS(parse_method(""), UsageError);
  CHECK_THROWS_WITH(parse_method("bogus"),
                    Catch::Matchers::ContainsSubstring("unknown method"));

  CHECK_FALSE(is_diffusion(Method::kPconCore));
  CHECK_FALSE(is_diffusion(Method::kPconDe));
  CHECK_FALSE(is_diffusion(Method::kAscSweep));
  CHECK(is_diffusion(Method::kTrw));
  CHECK(is_diffusion(Method::kPpr));
  CHECK(is_diffusion(Method::kHk));
}

TEST_CASE("parse_gen_spec reads every model's keys", "[bench]") {
  GenSpec er = parse_gen_spec("er:n=100,p=0.25,seed=9");
  CHECK(er.model == GenModel::kEr);
  CHECK(er.n == 100);
  CHECK(er.p == 0.25);
  CHECK(er.seed == 9);

  GenSpec er_m = parse_gen_spec("er:n=100,m=400");
  CHECK(er_m.m_target == 400);
  CHECK(er_m.p == -1.0);

  GenSpec ba = parse_gen_spec("ba:n=50,k=3");
  CHECK(ba.model == GenModel::kBa);
  CHECK(ba.k == 3);

  GenSpec ws = parse_gen_spec("ws:n=64,k=4,beta=0.5");
  CHECK(ws.model == GenModel::kWs);
  CHECK(ws.k == 4);
  CHECK(ws.beta == 0.5);

  GenSpec plc = parse_gen_spec("plc:n=80,k=5,pt=0.4");
  CHECK(plc.model == GenModel::kPlc);
  CHECK(plc.p_triangle == 0.4);

  GenSpec pl = parse_gen_spec("planted:n=200,c=4,kin=8,mu=0.3");
  CHECK(pl.model == GenModel::kPlanted);
  CHECK(pl.communities == 4);
  CHECK(pl.intra_degree == 8.0);
  CHECK(pl.mu == 0.3);

  // trailing comma and empty segments are harmless
  CHECK(parse_gen_spec("er:n=5,").n == 5);

  // every parsed spec must be generatable
  Generated gen = generate(parse_gen_spec("er:n=40,p=0.3,seed=2"));
  CHECK(gen.graph.vertex_count() == 40);
}

TEST_CASE("parse_gen_spec rejects malformed specs", "[bench]") {
  auto rejects = [](const std::string& text) {
    CHECK_THROWS_AS(parse_gen_spec(text), std::invalid_argument);
  };
  rejects("er");                  // no colon
  rejects("foo:n=5");             // unknown model
  rejects("er:p=0.5");            // n missing
  rejects("er:n=0");              // n out of range
  rejects("er:n=abc");            // not an integer
  rejects("er:n=-5");             // negatives must not wrap
  rejects("er:n=5,p=zz");         // not a number
  rejects("er:n=5,p");            // no '='
  rejects("er:n=5,k=3");          // key belongs to another model
  rejects("planted:n=10,c=1");    // c out of range
  rejects("ws:n=5,k=99999999999999999999");  // overflow
}

TEST_CASE("run_benchmark emits one scored record per structural run",
          "[bench]") {
  Graph g = testsupport::barbell();
  MethodParams p;

  std::vector<RunRecord> recs = run_benchmark(g, "barbell", Method::kPconCore,
                                              p);
  REQUIRE(recs.size() == 1);
  const RunRecord& r = recs.front();
  CHECK(r.dataset == "barbell");
  CHECK(r.method == "pcon_core");
  CHECK(r.params == "");
  CHECK(r.seed == p.rng_seed);
  CHECK(r.conductance == Catch::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(r.size == 3);
  CHECK(r.volume == 7);
  CHECK(r.time_s >= 0.0);
  CHECK(r.mem_bytes > 0);
  CHECK_FALSE(r.nmi.has_value());
  CHECK_FALSE(r.timestamp.empty());

  SECTION("partition ground truth scores the exact triangle at 1") {
    Partition truth{{0, 0, 0, 1, 1, 1}};
    std::vector<RunRecord> scored =
        run_benchmark(g, "barbell", Method::kPconCore, p, truth);
    REQUIRE(scored.size() == 1);
    REQUIRE(scored.front().nmi.has_value());
    CHECK(*scored.front().nmi == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("community-list ground truth may overlap") {
    std::vector<std::vector<VertexId>> truth = {{0, 1, 2, 3}, {3, 4, 5}};
    std::vector<RunRecord> scored =
        run_benchmark(g, "barbell", Method::kPconDe, p, &truth);
    REQUIRE(scored.size() == 1);
    REQUIRE(scored.front().nmi.has_value());
    CHECK(*scored.front().nmi == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("input validation") {
    Graph edgeless = Graph::from_edges(3, {});
    CHECK_THROWS_AS(run_benchmark(edgeless, "x", Method::kPconCore, p),
                    std::invalid_argument);
    std::vector<std::vector<VertexId>> empty_truth;
    CHECK_THROWS_AS(run_benchmark(g, "x", Method::kPconCore, p, &empty_truth),
                    std::invalid_argument);
    Partition short_truth{{0, 0, 1}};
    CHECK_THROWS_AS(run_benchmark(g, "x", Method::kPconCore, p, short_truth),
                    std::invalid_argument);
  }
}

TEST_CASE("diffusion benchmark emits one record per distinct seed vertex",
          "[bench]") {
  Graph g = testsupport::barbell();
  MethodParams p;
  p.alpha = 0.3;
  p.eps = 1e-4;
  p.seed_count = 50;  // clamps to n = 6

  std::vector<RunRecord> recs = run_benchmark(g, "barbell", Method::kPpr, p);
  REQUIRE(recs.size() == 6);
  std::set<std::uint64_t> seeds;
  for (const RunRecord& r : recs) {
    seeds.insert(r.seed);
    CHECK(r.method == "ppr");
    CHECK(r.params == detail::params_string(g, Method::kPpr, p));
    CHECK(r.size >= 1);
    CHECK(r.volume >= 1);
    CHECK(r.conductance > 0.0);
    CHECK(r.conductance <= 1.0);
  }
  CHECK(seeds == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});

  SECTION("repeat runs are deterministic") {
    std::vector<RunRecord> again = run_benchmark(g, "barbell", Method::kPpr, p);
    REQUIRE(again.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
      CHECK(same_result(recs[i], again[i]));
  }

  SECTION("worker pool does not change results or order") {
    MethodParams mp = p;
    mp.workers = 4;
    std::vector<RunRecord> parallel =
        run_benchmark(g, "barbell", Method::kPpr, mp);
    REQUIRE(parallel.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
      CHECK(same_result(recs[i], parallel[i]));
  }

  SECTION("seed sampling is capped and duplicate-free on larger graphs") {
    Graph big = testsupport::random_connected_graph(60, 0.1, 11);
    MethodParams bp;
    bp.seed_count = 25;
    std::vector<RunRecord> sample = run_benchmark(big, "rnd", Method::kHk, bp);
    REQUIRE(sample.size() == 25);
    std::set<std::uint64_t> distinct;
    for (const RunRecord& r : sample) distinct.insert(r.seed);
    CHECK(distinct.size() == 25);
  }
}

TEST_CASE("memory scope tracks peak allocation", "[bench]") {
  REQUIRE(memtrack::implemented());
  memtrack::Scope scope;
  {
    std::vector<char> big(1 << 20, 'x');
    CHECK(big.back() == 'x');
  }
  CHECK(scope.peak() >= (1u << 20));

  // after the vector died, current drops but the peak stays
  memtrack::Scope fresh;
  CHECK(fresh.peak() < (1u << 20));
}

TEST_CASE("emit_csv writes the pinned header and quotes reserved characters",
          "[bench]") {
  CHECK(std::string(kCsvHeader) ==
        "dataset,method,params,seed,time_s,mem_bytes,conductance,size,volume,"
        "nmi");

  RunRecord rec;
  rec.dataset = "weird,\"name\"";
  rec.method = "ppr";
  rec.params = "alpha=0.3,eps=0.0001";
  rec.seed = 4;
  rec.time_s = 0.1;
  rec.mem_bytes = 12345;
  rec.conductance = 1.0 / 7.0;
  rec.size = 3;
  rec.volume = 7;

  RunRecord plain;
  plain.dataset = "plain";
  plain.method = "pcon_core";
  plain.params = "";
  plain.seed = 1;
  plain.time_s = 1.0 / 3.0;
  plain.mem_bytes = 0;
  plain.conductance = 0.25;
  plain.size = 10;
  plain.volume = 40;
  plain.nmi = 2.0 / 3.0;

  std::ostringstream os;
  emit_csv(os, {rec, plain});
  std::vector<std::string> lines = csv_lines(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);

  std::vector<std::string> f1 = split_csv_row(lines[1]);
  REQUIRE(f1.size() == 10);
  CHECK(f1[0] == "weird,\"name\"");
  CHECK(f1[1] == "ppr");
  CHECK(f1[2] == "alpha=0.3,eps=0.0001");
  CHECK(f1[3] == "4");
  CHECK(std::strtod(f1[4].c_str(), nullptr) == 0.1);
  CHECK(f1[5] == "12345");
  CHECK(std::strtod(f1[6].c_str(), nullptr) == 1.0 / 7.0);
  CHECK(f1[7] == "3");
  CHECK(f1[8] == "7");
  CHECK(f1[9] == "");  // nmi unset -> empty field

  // raw text must carry the quoted forms
  CHECK(lines[1].find("\"weird,\"\"name\"\"\"") != std::string::npos);
  CHECK(lines[1].find("\"alpha=0.3,eps=0.0001\"") != std::string::npos);

  std::vector<std::string> f2 = split_csv_row(lines[2]);
  REQUIRE(f2.size() == 10);
  CHECK(std::strtod(f2[4].c_str(), nullptr) == 1.0 / 3.0);
  CHECK(std::strtod(f2[9].c_str(), nullptr) == 2.0 / 3.0);
}

TEST_CASE("csv records round-trip through a bench run", "[bench]") {
  Graph g = testsupport::two_rings();
  MethodParams p;
  p.alpha = 0.2;
  p.eps = 1e-5;
  p.seed_count = 4;
  std::vector<RunRecord> recs = run_benchmark(g, "two_rings", Method::kPpr, p);

  std::ostringstream os;
  emit_csv(os, recs);
  std::vector<std::string> lines = csv_lines(os.str());
  REQUIRE(lines.size() == recs.size() + 1);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    std::vector<std::string> f = split_csv_row(lines[i + 1]);
    REQUIRE(f.size() == 10);
    CHECK(f[0] == recs[i].dataset);
    CHECK(f[1] == recs[i].method);
    CHECK(f[2] == recs[i].params);
    CHECK(f[3] == std::to_string(recs[i].seed));
    CHECK(std::strtod(f[4].c_str(), nullptr) == recs[i].time_s);
    CHECK(f[5] == std::to_string(recs[i].mem_bytes));
    CHECK(std::strtod(f[6].c_str(), nullptr) == recs[i].conductance);
    CHECK(f[7] == std::to_string(recs[i].size));
    CHECK(f[8] == std::to_string(recs[i].volume));
    CHECK(f[9].empty());
  }
}

TEST_CASE("params_string pins the per-method formats", "[bench]") {
  Graph g = testsupport::two_rings();  // m = 10
  MethodParams p;
  CHECK(detail::params_string(g, Method::kPconCore, p) == "");
  CHECK(detail::params_string(g, Method::kPconDe, p) == "");
  CHECK(detail::params_string(g, Method::kAscSweep, p) ==
        "tol=1e-07,iters=5000");
  CHECK(detail::params_string(g, Method::kTrw, p) == "eps=0.1,iters=10");
  CHECK(detail::params_string(g, Method::kPpr, p) == "alpha=0.01,eps=0.1");
  CHECK(detail::params_string(g, Method::kHk, p) == "t=10,eps=0.1");

  MethodParams q;
  q.eps = 0.5;
  q.iters = 3;
  CHECK(detail::params_string(g, Method::kTrw, q) == "eps=0.5,iters=3");
  CHECK(detail::resolve_eps(g, p) == 0.1);  // defaulted to 1/m
  CHECK(detail::resolve_eps(g, q) == 0.5);
}

TEST_CASE("scaling_bench validates its inputs", "[bench]") {
  MethodParams p;
  auto rejects = [&](std::vector<VertexId> sizes, std::uint32_t reps = 1) {
    CHECK_THROWS_AS(
        scaling_bench(GenModel::kEr, sizes, Method::kPconCore, p, reps),
        std::invalid_argument);
  };
  rejects({1000, 2000});              // fewer than 3 sizes
  rejects({500, 1000, 2000});         // below the size floor
  rejects({1000, 1000, 2000});        // not strictly increasing
  rejects({1000, 2000, 1500});        // not strictly increasing
  rejects({1000, 1400, 2000}, 0);     // reps must be >= 1
}

TEST_CASE("scaling_bench fits a log-log line over generated sizes",
          "[bench][slow]") {
  MethodParams p;
  const std::vector<VertexId> sizes = {1000, 1400, 2000};
  ScalingReport report =
      scaling_bench(GenModel::kEr, sizes, Method::kPconCore, p, 1);
  REQUIRE(report.rows.size() == 3);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const RunRecord& row = report.rows[i];
    CHECK(row.dataset == "scale_n" + std::to_string(sizes[i]));
    CHECK(row.method == "pcon_core");
    CHECK(row.size > 0);
    CHECK(row.volume > 0);
    CHECK(row.time_s > 0.0);
  }
  CHECK(std::isfinite(report.slope));
  CHECK(report.r2 >= 0.0);
  CHECK(report.r2 <= 1.0 + 1e-12);
}
