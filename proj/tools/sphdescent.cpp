// Command-line front end: verdicts, invariant and fan checks, Weyl orbits and
// conjugacy, and cohomology reports for JSON problem files.
//
// Exit codes: verdict 0 (FormExists or ExistsIffObstructionVanishes), 1
// (NoForm), 2 (Inconclusive); check commands 0 on success and 1 on a failed
// check; 64 for unreadable or invalid input; 70 when a cap is exceeded.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "sphdescent/sphdescent.hpp"

namespace sd = sphdescent;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitCap = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t effective_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SPHDESCENT_CAP")) {
    try {
      std::size_t pos = 0;
      auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SPHDESCENT_CAP is not a positive integer: ") + env);
  }
  return sd::kDefaultWeylCap;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

sd::RatVector parse_numbers(const std::string& s) {
  sd::RatVector v;
  for (const auto& part : split(s, ',')) v.push_back(sd::parse_rational(part));
  return v;
}

// alpha<i>, omega<i>, eps:..., roots:..., weights:..., or plain X coordinates.
sd::RatVector parse_vector_arg(const sd::BasedRootDatum& brd, const std::string& text) {
  try {
    auto indexed = [&](const std::string& prefix) -> std::optional<std::size_t> {
      if (text.rfind(prefix, 0) != 0 || text.size() == prefix.size()) return std::nullopt;
      auto k = std::stoul(text.substr(prefix.size()));
      if (k < 1 || k > brd.semisimple_rank()) throw UsageError("index out of range in '" + text + "'");
      return k - 1;
    };
    if (auto k = indexed("alpha")) return sd::to_rational(brd.simple_root(*k));
    if (auto k = indexed("omega")) {
      sd::RatVector w(brd.rank());
      w[*k] = 1;
      return brd.from_fundamental_weights(w);
    }
    auto colon = text.find(':');
    if (colon == std::string::npos) {
      auto v = parse_numbers(text);
      if (v.size() != brd.rank()) throw UsageError("expected " + std::to_string(brd.rank()) + " coordinates in '" + text + "'");
      return v;
    }
    auto kind = text.substr(0, colon);
    auto v = parse_numbers(text.substr(colon + 1));
    if (kind == "eps") return brd.from_epsilon(v);
    if (kind == "roots") return brd.from_simple_roots(v);
    if (kind == "weights") return brd.from_fundamental_weights(v);
    throw UsageError("unknown vector notation '" + kind + "'");
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("cannot read vector '" + text + "': " + e.what());
  }
}

sd::BasedRootDatum datum_from_args(const std::string& type, std::size_t rank, const std::string& isogeny) {
  sd::Isogeny iso;
  if (isogeny == "sc" || isogeny == "simply_connected") iso = sd::Isogeny::SimplyConnected;
  else if (isogeny == "adjoint") iso = sd::Isogeny::Adjoint;
  else throw UsageError("isogeny must be sc or adjoint");
  try {
    return sd::BasedRootDatum::build(type + std::to_string(rank), iso);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string vector_text(const sd::RatVector& v) { return sd::format_vector(v); }

void print_json(const sd::Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_verdict(const std::vector<std::string>& files, const std::string& corpus, bool json) {
  std::vector<std::string> paths = files;
  if (!corpus.empty()) {
    if (!std::filesystem::is_directory(corpus)) throw UsageError("not a directory: " + corpus);
    for (const auto& e : std::filesystem::directory_iterator(corpus))
      if (e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
  }
  if (paths.empty()) throw UsageError("no problem files given");
  const bool batch = paths.size() > 1;
  int worst = 0;
  sd::Json all = sd::Json::array();
  for (const auto& path : paths) {
    int code;
    try {
      auto p = sd::load_problem(path);
      auto v = sd::run_verdict(p);
      code = sd::exit_code(v.status);
      if (json) {
        auto j = sd::verdict_json(p, v);
        if (batch) {
          j["file"] = std::filesystem::path(path).filename().string();
          all.push_back(j);
        } else {
          print_json(j);
        }
      } else if (batch) {
        std::cout << std::left << std::setw(32) << std::filesystem::path(path).filename().string() << sd::to_string(v.status)
                  << "\n";
      } else {
        std::cout << sd::verdict_text(p, v);
      }
    } catch (const sd::ParseError& e) {
      if (!batch) throw;
      std::cerr << path << ": " << e.what() << "\n";
      code = kExitUsage;
    }
    worst = std::max(worst, code);
  }
  if (json && batch) print_json(all);
  return worst;
}

int cmd_check_invariants(const std::string& file, bool json) {
  auto p = sd::load_problem(file);
  auto r = sd::invariants_report(p);
  bool ok = true;
  if (r.contains("invariants")) ok = ok && r["invariants"]["preserved"].get<bool>();
  if (r.contains("horospherical")) ok = ok && r["horospherical"]["invariant"].get<bool>();
  if (json) {
    print_json(r);
    return ok ? 0 : 1;
  }
  std::cout << "problem       " << p.name << "\n";
  std::cout << "action order  " << p.action.order() << "\n";
  if (r.contains("invariants")) {
    auto flag = [](const sd::Json& b) { return b.is_null() ? std::string("n/a") : b.get<bool>() ? "yes" : "NO"; };
    std::cout << "invariants preserved: " << (r["invariants"]["preserved"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "  " << std::left << std::setw(12) << "element" << std::setw(9) << "lattice" << std::setw(9) << "cone"
              << std::setw(9) << "omega1" << "omega2\n";
    for (const auto& e : r["invariants"]["elements"])
      std::cout << "  " << std::left << std::setw(12) << e["element"].get<std::string>() << std::setw(9)
                << flag(e["weight_lattice"]) << std::setw(9) << flag(e["valuation_cone"]) << std::setw(9) << flag(e["omega1"])
                << flag(e["omega2"]) << "\n";
  }
  if (r.contains("horospherical")) {
    const auto& h = r["horospherical"];
    std::cout << "horospherical datum invariant: " << (h["invariant"].get<bool>() ? "yes" : "no");
    if (!h["invariant"].get<bool>())
      std::cout << " (" << h["reason"].get<std::string>() << " by " << h["violator"].get<std::string>() << ")";
    std::cout << "\n";
    for (const auto& w : h["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_check_fan(const std::string& file, bool json) {
  auto p = sd::load_problem(file);
  auto r = sd::fan_report(p);
  const bool ok = r["valid"].get<bool>() && r["stability"]["stable"].get<bool>();
  if (json) {
    print_json(r);
    return ok ? 0 : 1;
  }
  std::cout << "problem     " << p.name << "\n";
  std::cout << "fan         " << r["source"].get<std::string>() << ", " << r["cone_count"].get<std::size_t>() << " cones\n";
  std::cout << "valid       " << (r["valid"].get<bool>() ? "yes" : "no") << "\n";
  for (const auto& pr : r["problems"]) std::cout << "  " << pr.get<std::string>() << "\n";
  std::cout << "wonderful   " << (r["wonderful"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "stable      " << (r["stability"]["stable"].get<bool>() ? "yes" : "no");
  if (r["stability"].contains("generator")) std::cout << " (moved by " << r["stability"]["generator"].get<std::string>() << ")";
  std::cout << "\n";
  return ok ? 0 : 1;
}

int cmd_weyl_orbit(const std::string& type, std::size_t rank, const std::string& vec, const std::string& isogeny,
                   std::size_t cap, bool json) {
  auto brd = datum_from_args(type, rank, isogeny);
  auto v = parse_vector_arg(brd, vec);
  auto orbit = sd::weyl_orbit(brd, v, cap);
  if (json) {
    sd::Json list = sd::Json::array();
    for (const auto& w : orbit) list.push_back({{"X", sd::vector_json(w)}, {"eps", sd::vector_json(brd.to_epsilon(w))}});
    print_json({{"type", brd.type_label()}, {"vector", sd::vector_json(v)}, {"size", orbit.size()}, {"orbit", list}});
    return 0;
  }
  std::cout << "orbit of " << vector_text(v) << " in " << brd.type_label() << ": " << orbit.size() << " vectors\n";
  for (const auto& w : orbit) std::cout << "  " << vector_text(w) << "   eps " << vector_text(brd.to_epsilon(w)) << "\n";
  return 0;
}

sd::RootSubset parse_root_set(const sd::BasedRootDatum& brd, const std::string& text, bool pm) {
  std::vector<sd::IntVector> roots;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ' ', ';');
  for (const auto& part : split(normalized, ';')) {
    if (part.empty()) continue;
    auto v = parse_vector_arg(brd, part);
    if (!sd::is_integral(v)) throw UsageError("'" + part + "' is not a root");
    roots.push_back(sd::to_integer(v));
  }
  try {
    sd::RootSubset s(brd, roots);
    return pm ? s.symmetrized() : s;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_conjugate(const std::string& type, std::size_t rank, const std::string& a, const std::string& b, bool pm,
                  const std::string& isogeny, std::size_t cap, bool json) {
  auto brd = datum_from_args(type, rank, isogeny);
  auto sa = parse_root_set(brd, a, pm), sb = parse_root_set(brd, b, pm);
  auto w = sd::are_weyl_conjugate(brd, sa, sb, cap);
  const bool verified = w && sa.image(w->matrix) == sb;
  if (json) {
    sd::Json j = {{"type", brd.type_label()}, {"conjugate", w.has_value()}};
    if (w) {
      j["word"] = sd::word_text(w->word);
      j["matrix"] = sd::matrix_json(w->matrix);
      j["verified"] = verified;
    }
    print_json(j);
    return w ? 0 : 1;
  }
  std::cout << "conjugate   " << (w ? "yes" : "no") << "\n";
  if (w) {
    std::cout << "witness     " << sd::word_text(w->word) << "\n";
    std::cout << "verified    " << (verified ? "yes" : "no") << " (matrix applied to every root of the first set)\n";
  }
  return w ? 0 : 1;
}

int cmd_cohomology(const std::string& file, bool json) {
  auto p = sd::load_problem(file);
  if (!p.cohomology.a_module && !p.z_module) throw UsageError(file + ": no character modules in the cohomology block");
  auto lines = sd::cohomology_report(p);
  if (json) {
    print_json({{"problem", p.name}, {"report", lines}});
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
  }
  return 0;
}

int cmd_normalize(const std::string& file) {
  print_json(sd::serialize_problem(sd::load_problem(file)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant descent checks for spherical homogeneous spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::size_t> cap;
  app.add_option("--cap", cap, "Cap on Weyl group and orbit enumeration (overrides SPHDESCENT_CAP)")->check(CLI::PositiveNumber);

  bool json = false;
  std::vector<std::string> files;
  std::string corpus, file, type, vec, set_a, set_b, isogeny = "sc";
  std::size_t rank = 0;
  bool pm = false;

  auto* verdict = app.add_subcommand("verdict", "Decide whether a form exists");
  verdict->add_option("files", files, "Problem files");
  verdict->add_option("--corpus", corpus, "Run every .json file in a directory");
  verdict->add_flag("--json", json, "Emit the full trace as JSON");

  auto* inv = app.add_subcommand("check-invariants", "Check that the action preserves the invariants");
  inv->add_option("file", file)->required();
  inv->add_flag("--json", json);

  auto* fan = app.add_subcommand("check-fan", "Check the fan (or the wonderful fan) for validity and stability");
  fan->add_option("file", file)->required();
  fan->add_flag("--json", json);

  auto* orbit = app.add_subcommand("weyl-orbit", "Weyl orbit of a vector");
  orbit->add_option("type", type, "Cartan type letter")->required();
  orbit->add_option("rank", rank)->required();
  orbit->add_option("vector", vec, "alpha<i>, omega<i>, eps:..., roots:..., weights:... or X coordinates")->required();
  orbit->add_option("--isogeny", isogeny, "sc or adjoint");
  orbit->add_flag("--json", json);

  auto* conj = app.add_subcommand("conjugate", "Weyl conjugacy of two root sets");
  conj->add_option("type", type)->required();
  conj->add_option("rank", rank)->required();
  conj->add_option("set_a", set_a, "Roots separated by ';' or spaces")->required();
  conj->add_option("set_b", set_b, "Roots separated by ';' or spaces")->required();
  conj->add_flag("--pm", pm, "Close both sets under negation");
  conj->add_option("--isogeny", isogeny, "sc or adjoint");
  conj->add_flag("--json", json);

  auto* coh = app.add_subcommand("cohomology", "Character modules, fixed points and the local H² test");
  coh->add_option("file", file)->required();
  coh->add_flag("--json", json);

  auto* norm = app.add_subcommand("normalize", "Print the normalized form of a problem file");
  norm->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto c = effective_cap(cap);
    if (*verdict) return cmd_verdict(files, corpus, json);
    if (*inv) return cmd_check_invariants(file, json);
    if (*fan) return cmd_check_fan(file, json);
    if (*orbit) return cmd_weyl_orbit(type, rank, vec, isogeny, c, json);
    if (*conj) return cmd_conjugate(type, rank, set_a, set_b, pm, isogeny, c, json);
    if (*coh) return cmd_cohomology(file, json);
    if (*norm) return cmd_normalize(file);
  } catch (const sd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sd::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const sd::NotStrictlyConvex& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
