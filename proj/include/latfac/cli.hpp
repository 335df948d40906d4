#pragma once

#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latfac/verify.hpp"

namespace latfac::cli {

using io::json;

/// Verification failure carrying its report; mapped to exit code 1.
struct VerificationFailed {
  json report;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << text;
}

/// "grid:2,1", "chain:3", "diamond"
inline Lattice parse_standard(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<int> params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        params.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw Error(ErrorKind::BadParams, "bad parameter '" + tok + "'");
      }
    }
  }
  return make_standard(kind, params);
}

struct LatticeSource {
  std::string file;
  std::string standard;

  void add_to(CLI::App* app) {
    app->add_option("--lattice", file, "lattice JSON file");
    app->add_option("--standard", standard, "standard lattice, e.g. grid:1,1 or chain:3");
  }

  LatticeRef load() const {
    if (!file.empty() && !standard.empty()) throw CLI::ValidationError("use only one of --lattice and --standard");
    if (!file.empty()) return share(io::parse_lattice(read_file(file)));
    if (!standard.empty()) return share(parse_standard(standard));
    throw CLI::RequiredError("--lattice or --standard");
  }
};

inline std::string relation_text(const Lattice& l, const Relation& r) {
  std::string s = "{";
  bool first = true;
  for (auto [x, y] : r.pairs()) {
    s += (first ? "" : ", ") + l.label(x) + "->" + l.label(y);
    first = false;
  }
  return s + "}";
}

inline std::string set_text(const Lattice& l, ElementSet a) {
  std::string s = "{";
  bool first = true;
  for_each_bit(a, [&](Element x) {
    s += (first ? "" : ", ") + l.label(x);
    first = false;
  });
  return s + "}";
}

inline std::string endo_text(const Lattice& l, const Endo& f) {
  std::string s = "(";
  for (Element x = 0; x < f.table.size(); ++x) s += (x ? ", " : "") + l.label(f(x));
  return s + ")";
}

inline void print_lattice_summary(std::ostream& out, const Lattice& l) {
  out << std::left << std::setw(10) << "elements" << l.size() << '\n'
      << std::setw(10) << "covers" << covering_relations(l).count() << '\n'
      << std::setw(10) << "modular" << (is_modular(l) ? "yes" : "no") << '\n'
      << std::setw(10) << "diamonds" << covering_diamonds(l).size() << '\n';
}

}  // namespace detail

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 domain error or failed verification (JSON error object on `err`),
/// 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factorization systems, transfer systems and their cryptomorphisms on finite lattices", "latfac"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, as_dot = false;
  std::size_t max_structures = 1'000'000;
  unsigned threads = 1;
  app.add_flag("--json", as_json, "emit JSON")->configurable(false);
  app.add_flag("--dot", as_dot, "emit Graphviz DOT where meaningful");
  app.add_option("--max-structures", max_structures, "abort enumerations beyond this many results");
  app.add_option("--threads", threads, "worker threads for enumeration")->check(CLI::PositiveNumber);
  auto opts = [&] { return EnumerationOptions{max_structures, threads}; };

  std::function<void()> action;

  // lattice {make,validate,dual}
  auto* lattice_cmd = app.add_subcommand("lattice", "construct and inspect lattices")->require_subcommand(1);
  std::string kind, in_file, out_file;
  std::vector<int> params;
  auto* make = lattice_cmd->add_subcommand("make", "build a standard lattice");
  make->add_option("kind", kind, "chain|grid|boolean|bowtie|diamond|pentagon")->required();
  make->add_option("params", params, "integer parameters");
  make->add_option("-o,--output", out_file, "output file");
  make->callback([&] {
    action = [&] {
      const Lattice l = make_standard(kind, params);
      detail::write_output(out_file, as_dot ? io::to_dot(l) : io::to_json(l).dump(2) + "\n", out);
    };
  });
  auto* validate = lattice_cmd->add_subcommand("validate", "check a lattice file");
  validate->add_option("file", in_file, "lattice JSON")->required();
  validate->callback([&] {
    action = [&] {
      const Lattice l = io::parse_lattice(detail::read_file(in_file));
      if (as_json) {
        out << json{{"format", io::kFormatVersion}, {"valid", true}, {"elements", l.size()},
                    {"covers", covering_relations(l).count()}, {"modular", is_modular(l)}}
                   .dump(2)
            << '\n';
      } else {
        out << "valid lattice\n";
        detail::print_lattice_summary(out, l);
      }
    };
  });
  auto* dual = lattice_cmd->add_subcommand("dual", "write the order dual");
  dual->add_option("file", in_file, "lattice JSON")->required();
  dual->add_option("-o,--output", out_file, "output file");
  dual->callback([&] {
    action = [&] {
      const Lattice l = dual_lattice(io::parse_lattice(detail::read_file(in_file)));
      detail::write_output(out_file, as_dot ? io::to_dot(l) : io::to_json(l).dump(2) + "\n", out);
    };
  });

  // enumerate <what>
  auto* enumerate_cmd = app.add_subcommand("enumerate", "enumerate structures on a lattice");
  std::string what, monoid = "meet";
  bool count_only = false;
  detail::LatticeSource enum_src;
  enumerate_cmd->add_option("what", what, "transfer|fac|saturated|disklike|closure|interior|submonoid")
      ->required()
      ->check(CLI::IsMember({"transfer", "fac", "saturated", "disklike", "closure", "interior", "submonoid"}));
  enum_src.add_to(enumerate_cmd);
  enumerate_cmd->add_flag("--count-only", count_only, "print only the number of structures");
  enumerate_cmd->add_option("--op", monoid, "meet|join (submonoids)")->check(CLI::IsMember({"meet", "join"}));
  enumerate_cmd->callback([&] {
    action = [&] {
      const LatticeRef l = enum_src.load();
      std::vector<std::string> lines;
      json items = json::array();
      if (what == "transfer" || what == "saturated" || what == "disklike") {
        auto ts = what == "saturated" ? enumerate_saturated(l, opts()) : enumerate_transfer(l, opts());
        for (const auto& t : ts) {
          if (what == "disklike" && !is_disklike(t)) continue;
          lines.push_back(detail::relation_text(*l, t.rel));
          items.push_back(io::pairs_to_json(t.rel));
        }
      } else if (what == "fac") {
        for (const auto& f : enumerate_fac(l, opts())) {
          lines.push_back("L=" + detail::relation_text(*l, f.left) + "  R=" + detail::relation_text(*l, f.right));
          items.push_back(io::to_json(f));
        }
      } else if (what == "closure" || what == "interior") {
        for (const auto& f : what == "closure" ? enumerate_closure_operators(l, opts()) : enumerate_interior_operators(l, opts())) {
          lines.push_back(detail::endo_text(*l, f));
          items.push_back(io::to_json(f));
        }
      } else {
        for (const auto& a : enumerate_submonoids(l, monoid == "meet" ? MonoidOp::Meet : MonoidOp::Join, opts())) {
          lines.push_back(detail::set_text(*l, a.members));
          items.push_back(io::to_json(a));
        }
      }
      if (count_only && as_json) {
        out << json{{"format", io::kFormatVersion}, {"kind", what}, {"count", lines.size()}}.dump() << '\n';
      } else if (count_only) {
        out << lines.size() << '\n';
      } else if (as_json) {
        out << json{{"format", io::kFormatVersion}, {"kind", what}, {"count", lines.size()}, {"items", items}}.dump(2) << '\n';
      } else {
        for (const auto& s : lines) out << s << '\n';
      }
    };
  });

  // verify <suite>
  auto* verify_cmd = app.add_subcommand("verify", "run an exhaustive verification suite");
  std::string suite;
  int grid_m = -1, grid_n = -1;
  detail::LatticeSource verify_src;
  verify_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify_src.add_to(verify_cmd);
  verify_cmd->add_option("--m", grid_m, "grid height (polybernoulli)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--n", grid_n, "grid width (polybernoulli)")->check(CLI::NonNegativeNumber);
  verify_cmd->callback([&] {
    action = [&] {
      SuiteReport report;
      if (suite == "polybernoulli" && grid_m >= 0 && grid_n >= 0)
        report = verify_polybernoulli(static_cast<unsigned>(grid_m), static_cast<unsigned>(grid_n), opts());
      else
        report = verify_suite(suite, verify_src.load(), opts());
      if (as_json)
        out << to_json(report).dump(2) << '\n';
      else
        print_table(out, report);
      if (!report.passed()) throw VerificationFailed{to_json(report)};
    };
  });

  // count {report,poly-bernoulli,saturated-grid}
  auto* count_cmd = app.add_subcommand("count", "closed-form and enumerated counts")->require_subcommand(1);
  detail::LatticeSource count_src;
  auto* report_cmd = count_cmd->add_subcommand("report", "count every structure kind on a lattice");
  count_src.add_to(report_cmd);
  report_cmd->callback([&] {
    action = [&] {
      const CountReport r = count_report(count_src.load(), opts());
      if (as_json) {
        out << io::to_json(r).dump(2) << '\n';
        return;
      }
      std::size_t w = 4;
      for (const auto& c : r.counts) w = std::max(w, c.kind.size());
      out << std::left << std::setw(static_cast<int>(w)) << "kind" << "  " << std::setw(12) << "count" << "provenance\n";
      for (const auto& c : r.counts)
        out << std::setw(static_cast<int>(w)) << c.kind << "  " << std::setw(12) << c.value.str() << to_string(c.provenance) << '\n';
    };
  });
  unsigned pa = 0, pb = 0;
  auto* pb_cmd = count_cmd->add_subcommand("poly-bernoulli", "B_{a,b} for a,b >= 1");
  pb_cmd->add_option("a", pa)->required();
  pb_cmd->add_option("b", pb)->required();
  pb_cmd->callback([&] {
    action = [&] {
      const BigInt v = poly_bernoulli(pa, pb);
      if (as_json)
        out << json{{"format", io::kFormatVersion}, {"a", pa}, {"b", pb}, {"value", v.str()}}.dump() << '\n';
      else
        out << v.str() << '\n';
    };
  });
  bool check = false;
  auto* sg_cmd = count_cmd->add_subcommand("saturated-grid", "saturated transfer systems on grid(m,n)");
  sg_cmd->add_option("m", pa)->required();
  sg_cmd->add_option("n", pb)->required();
  sg_cmd->add_flag("--check", check, "also enumerate and compare");
  sg_cmd->callback([&] {
    action = [&] {
      const BigInt v = count_saturated_grid(pa, pb, check, opts());
      if (as_json)
        out << json{{"format", io::kFormatVersion}, {"m", pa}, {"n", pb}, {"value", v.str()}, {"checked", check}}.dump() << '\n';
      else
        out << v.str() << '\n';
    };
  });

  // export {dot,json}
  auto* export_cmd = app.add_subcommand("export", "diagram and interchange output")->require_subcommand(1);
  detail::LatticeSource export_src;
  std::string transfer_file;
  auto* dot_cmd = export_cmd->add_subcommand("dot", "Hasse diagram, optionally with a transfer system overlay");
  export_src.add_to(dot_cmd);
  dot_cmd->add_option("--transfer", transfer_file, "transfer system JSON to overlay");
  dot_cmd->add_option("-o,--output", out_file, "output file");
  dot_cmd->callback([&] {
    action = [&] {
      if (!transfer_file.empty()) {
        const json j = json::parse(detail::read_file(transfer_file));
        const TransferSystem t = io::transfer_from_json(j, [&](const std::string& path) {
          return share(io::parse_lattice(detail::read_file(path)));
        });
        detail::write_output(out_file, io::to_dot(*t.lattice, &t.rel), out);
      } else {
        detail::write_output(out_file, io::to_dot(*export_src.load()), out);
      }
    };
  });
  auto* json_cmd = export_cmd->add_subcommand("json", "canonical lattice JSON");
  export_src.add_to(json_cmd);
  json_cmd->add_option("-o,--output", out_file, "output file");
  json_cmd->callback([&] { action = [&] { detail::write_output(out_file, io::to_json(*export_src.load()).dump(2) + "\n", out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const VerificationFailed& f) {
    err << json{{"error", "VerificationFailed"}, {"report", f.report}}.dump() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace latfac::cli
