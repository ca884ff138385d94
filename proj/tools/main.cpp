// netcert: exact-arithmetic toolbox for finitely-presented metric spaces:
// axiom checks, weighted product distances, finite eps-net certificates,
// nested-ball cluster extraction, and the binary-expansion evaluation map.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netcert/nets.hpp"
#include "netcert/product.hpp"
#include "netcert/quotient.hpp"
#include "netcert/space.hpp"
#include "netcert/spacefile.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw netcert::Error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

netcert::SpaceDefFile load_definitions(const std::string& path) {
  if (path.empty())
    throw netcert::Error("this command needs a definition file (-f FILE)");
  return netcert::parse_space_file(read_file(path));
}

std::string render_seq(const netcert::BinarySeq& x) {
  std::string out;
  for (int b : x.prefix()) out += b ? '1' : '0';
  out += '@';
  out += x.tail() ? '1' : '0';
  return out;
}

netcert::BinarySeq parse_seq(const std::string& token) {
  std::size_t at = token.find('@');
  std::string bits = token.substr(0, at);
  int tail = 0;
  if (at != std::string::npos) {
    std::string t = token.substr(at + 1);
    if (t == "0")
      tail = 0;
    else if (t == "1")
      tail = 1;
    else
      throw netcert::Error("tail bit must be 0 or 1, got '" + t + "'");
  }
  std::vector<int> prefix;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw netcert::Error("sequence bits must be 0 or 1, got '" + token + "'");
    prefix.push_back(c - '0');
  }
  return netcert::BinarySeq(std::move(prefix), tail);
}

int print_axiom_report(const netcert::AxiomReport& report) {
  std::cout << "triples checked: " << report.triples_checked << "\n";
  std::cout << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) {
    std::cout << "  " << v.axiom << " (";
    bool first = true;
    for (const auto& p : v.points) {
      if (p.empty()) continue;
      if (!first) std::cout << ", ";
      std::cout << p;
      first = false;
    }
    std::cout << "): " << netcert::to_string(v.lhs) << " vs " << netcert::to_string(v.rhs)
              << "\n";
  }
  return report.ok() ? kOk : kCheckFailed;
}

int print_coverage_report(const netcert::CoverageReport& report) {
  std::cout << "probes checked: " << report.probes_checked << "\n";
  std::cout << "uncovered: " << report.uncovered.size() << "\n";
  for (const auto& miss : report.uncovered) {
    std::cout << "  " << netcert::render_point(miss.probe) << " nearest ";
    std::cout << (miss.min_distance ? netcert::to_string(*miss.min_distance) : "(empty net)")
              << "\n";
  }
  return report.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact metric-space toolbox: axiom checks, weighted product metrics,\n"
      "eps-net certificates, cluster-point extraction, and the binary\n"
      "evaluation map. All arithmetic is exact rational; radii compare\n"
      "strictly (a point is covered when its distance is < eps)."};
  app.require_subcommand(1);

  std::string def_path;
  app.add_option("-f,--file", def_path, "space definition file");

  // check-axioms <space> [--exhaustive | --probes FILE]
  auto* check = app.add_subcommand("check-axioms", "verify the metric laws of a space");
  std::string check_space;
  std::string check_probes;
  bool check_exhaustive = false;
  check->add_option("space", check_space, "space name")->required();
  check->add_flag("--exhaustive", check_exhaustive, "check every point triple");
  check->add_option("--probes", check_probes, "file with probe points, one per line");

  // dist <space> <p> <q>
  auto* dist = app.add_subcommand("dist", "exact distance between two points");
  std::string dist_space, dist_p, dist_q;
  dist->add_option("space", dist_space, "space name")->required();
  dist->add_option("p", dist_p, "first point")->required();
  dist->add_option("q", dist_q, "second point")->required();

  // net <space> --eps E [--out FILE]
  auto* net = app.add_subcommand("net", "synthesize a finite eps-net certificate");
  std::string net_space, net_eps, net_out;
  net->add_option("space", net_space, "space name")->required();
  net->add_option("--eps", net_eps, "net radius (rational)")->required();
  net->add_option("--out", net_out, "write the certificate here instead of stdout");

  // verify <space> --cert FILE [--support-bound K]
  auto* verify = app.add_subcommand("verify", "check a certificate against its space");
  std::string verify_space, verify_cert;
  std::size_t verify_bound = 6;
  verify->add_option("space", verify_space, "space name")->required();
  verify->add_option("--cert", verify_cert, "certificate file")->required();
  verify->add_option("--support-bound", verify_bound,
                     "probe products on all points with explicit coordinates 1..K (default 6)");

  // ball-witness <space> --point P --eps E
  auto* ball = app.add_subcommand("ball-witness",
                                  "basic-open and ball forms of the same neighborhood");
  std::string ball_space, ball_point, ball_eps;
  ball->add_option("space", ball_space, "space name")->required();
  ball->add_option("--point", ball_point, "ball center")->required();
  ball->add_option("--eps", ball_eps, "ball radius (rational)")->required();

  // limit <space> --seq FILE [--horizon H] [--levels N]
  auto* limit = app.add_subcommand("limit", "extract a certified cluster point");
  std::string limit_space, limit_seq;
  std::size_t limit_horizon = 0, limit_levels = 3;
  limit->add_option("space", limit_space, "space name")->required();
  limit->add_option("--seq", limit_seq, "file with sequence terms, one per line (cycled)")
      ->required();
  limit->add_option("--horizon", limit_horizon,
                    "number of terms to examine (default: the file's line count)");
  limit->add_option("--levels", limit_levels, "refinement levels (default 3)");

  // map-f <bits>
  auto* mapf = app.add_subcommand("map-f", "evaluate sum 2^-i x_i on a binary sequence");
  std::string mapf_bits;
  mapf->add_option("bits", mapf_bits, "sequence, e.g. 101 or 101@1 or @1")->required();

  // preimage <num/den>
  auto* pre = app.add_subcommand("preimage", "all binary expansions of a dyadic rational");
  std::string pre_value;
  pre->add_option("value", pre_value, "dyadic rational in [0,1]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*check) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(check_space);
      if (check_exhaustive && !check_probes.empty())
        throw netcert::Error("--exhaustive and --probes are mutually exclusive");
      netcert::AxiomReport report;
      if (!check_probes.empty()) {
        auto probes = netcert::parse_point_file(space, read_file(check_probes));
        report = netcert::check_metric_axioms(space, probes);
      } else {
        report = netcert::check_metric_axioms(space);
      }
      return print_axiom_report(report);
    }

    if (*dist) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(dist_space);
      netcert::Rational d = netcert::metric_eval(space, netcert::parse_point(space, dist_p),
                                                 netcert::parse_point(space, dist_q));
      std::cout << netcert::to_string(d) << "\n";
      return kOk;
    }

    if (*net) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(net_space);
      auto cert = netcert::net_of(space, netcert::parse_rational(net_eps));
      std::string text = netcert::write_certificate(cert);
      if (net_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(net_out, std::ios::binary);
        if (!out) throw netcert::Error("cannot write '" + net_out + "'");
        out << text;
      }
      return kOk;
    }

    if (*verify) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(verify_space);
      auto cert = netcert::bind_certificate(space,
                                            netcert::read_certificate(read_file(verify_cert)));
      netcert::ProbeSpec probes = space.is_simple()
                                      ? netcert::ProbeSpec::exhaustive()
                                      : netcert::ProbeSpec::support(verify_bound);
      return print_coverage_report(netcert::verify_coverage(space, cert, probes));
    }

    if (*ball) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(ball_space);
      netcert::Point center = netcert::parse_point(space, ball_point);
      netcert::BasicOpen open =
          netcert::ball_to_open(space, center, netcert::parse_rational(ball_eps));
      std::cout << "open: depth " << open.depth << " budget " << netcert::to_string(open.budget)
                << "\n";
      std::cout << "ball: eps " << netcert::to_string(netcert::open_to_ball(space, open))
                << "\n";
      return kOk;
    }

    if (*limit) {
      auto defs = load_definitions(def_path);
      const netcert::Space& space = defs.space(limit_space);
      auto terms = netcert::parse_point_file(space, read_file(limit_seq));
      if (terms.empty()) throw netcert::Error("'" + limit_seq + "' holds no points");
      std::size_t horizon = limit_horizon ? limit_horizon : terms.size();
      auto cluster = netcert::bw_extract(
          space, [&](std::size_t k) { return terms[(k - 1) % terms.size()]; }, horizon,
          limit_levels);
      std::cout << "point: " << netcert::render_point(cluster.point) << "\n";
      std::cout << "eps: " << netcert::to_string(cluster.eps) << "\n";
      std::cout << "support: " << cluster.support_count << " of " << horizon << "\n";
      for (std::size_t n = 1; n <= cluster.chain.size(); ++n)
        std::cout << "level " << n << ": center " << netcert::render_point(cluster.chain[n - 1])
                  << " radius 1/" << 2 * n << "\n";
      return kOk;
    }

    if (*mapf) {
      std::cout << netcert::to_string(netcert::f_eval(parse_seq(mapf_bits)).value()) << "\n";
      return kOk;
    }

    if (*pre) {
      netcert::Dyadic q(netcert::parse_rational(pre_value));
      for (const auto& seq : netcert::f_preimages(q)) std::cout << render_seq(seq) << "\n";
      return kOk;
    }
  } catch (const netcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
