// veelab: check covector configurations for the vee conditions and
// commutativity, compute identity vector fields, restrict along subsystems,
// and scan parameter relations.  See `veelab --help` and README.md.

#include <CLI11.hpp>
#include <veelab/cli.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using veelab::errc;
using veelab::fail;

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= csv.size()) {
    const size_t c = csv.find(',', start);
    out.push_back(csv.substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

double parse_double(const std::string& tok, const std::string& flag) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse_error, flag + ": '" + tok + "' is not a number");
  }
}

veelab::Params parse_set(const std::vector<std::string>& kvs) {
  veelab::Params out;
  for (const auto& kv : kvs) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(errc::parse_error, "--set expects key=value, got '" + kv + "'");
    std::vector<double> vals;
    for (const auto& tok : split_csv(kv.substr(eq + 1))) vals.push_back(parse_double(tok, "--set"));
    out[kv.substr(0, eq)] = vals;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vee-system and commutativity checker for trigonometric covector configurations"};
  app.require_subcommand(1);

  veelab::cli::RunConfig rc;
  std::vector<std::string> set_kv;
  std::string checks_csv, compare_csv, along_csv, range_csv;

  auto* check = app.add_subcommand("check", "run a check suite on a target");
  auto* identity = app.add_subcommand("identity", "compute and verify identity vector fields");
  auto* restrict_cmd = app.add_subcommand("restrict", "restrict along a subsystem and re-check");
  auto* scan = app.add_subcommand("scan", "scan one parameter for relation roots");
  auto* catalog = app.add_subcommand("catalog", "list built-in configuration families");

  for (CLI::App* sub : {check, identity, restrict_cmd, scan}) {
    sub->add_option("target", rc.target, "catalog name or configuration file path")->required();
    sub->add_option("--points", rc.points, "sample point count")->capture_default_str();
    sub->add_option("--seed", rc.seed, "sampling seed")->capture_default_str();
    sub->add_option("--tol", rc.tol, "verdict tolerance")->capture_default_str();
    sub->add_flag("--json", rc.json, "emit the JSON report");
    sub->add_option("--set", set_kv, "parameter substitution key=value (repeatable; lists as k=a,b)");
    sub->add_option("--kernel", rc.kernel, "trig | rational")
        ->check(CLI::IsMember({"trig", "rational"}))
        ->capture_default_str();
    sub->add_option("--i0", rc.i0, "pivot index for the minors route and the wdvv metric slice")
        ->capture_default_str();
  }
  check->add_option("--checks", checks_csv,
                    "comma list: vee, condition2, commute, wdvv, identity, restrict, scan");
  check->add_option("--along", along_csv, "subsystem member indices (for --checks restrict)");
  check->add_option("--free", rc.free_name, "varied parameter (for --checks scan)");
  check->add_option("--range", range_csv, "lo,hi (for --checks scan)");
  check->add_option("--grid", rc.grid, "scan grid cells")->capture_default_str();
  identity->add_option("--compare", compare_csv, "routes to cross-check: minors,closed");
  restrict_cmd->add_option("--along", along_csv, "comma list of subsystem member indices")
      ->required();
  scan->add_option("--free", rc.free_name, "parameter to vary")->required();
  scan->add_option("--range", range_csv, "lo,hi (use --range=-5,-1 for negative bounds)")
      ->required();
  scan->add_option("--grid", rc.grid, "grid cells")->capture_default_str();
  catalog->add_option("target", rc.target, "optional family name");

  CLI11_PARSE(app, argc, argv);

  try {
    rc.verb = app.get_subcommands().front()->get_name();
    rc.set = parse_set(set_kv);
    if (!checks_csv.empty()) rc.checks = split_csv(checks_csv);
    if (!compare_csv.empty()) rc.compare = split_csv(compare_csv);
    if (!along_csv.empty())
      for (const auto& tok : along_csv.empty() ? std::vector<std::string>{} : split_csv(along_csv))
        rc.along.push_back(static_cast<int>(parse_double(tok, "--along")));
    if (!range_csv.empty()) {
      const auto parts = split_csv(range_csv);
      if (parts.size() != 2) fail(errc::parse_error, "--range expects lo,hi");
      rc.lo = parse_double(parts[0], "--range");
      rc.hi = parse_double(parts[1], "--range");
      rc.has_range = true;
    }
    const veelab::cli::CheckReport rep = veelab::cli::run_check(rc);
    if (rc.json)
      std::cout << veelab::cli::to_json(rep).dump(2) << "\n";
    else
      std::cout << veelab::cli::render_human(rep);
    return rep.exit_status();
  } catch (const veelab::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
