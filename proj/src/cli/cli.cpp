#include "vdw/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdw/bounds.hpp"
#include "vdw/certificate.hpp"
#include "vdw/radix.hpp"
#include "vdw/ratio.hpp"
#include "vdw/registry.hpp"
#include "vdw/search.hpp"

namespace vdw::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

// Failures that map to a specific exit code.
struct Negative : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

Json rational_json(const Rational& q) {
  return Json{{"numerator", big_json(q.numerator())},
              {"denominator", big_json(q.denominator())},
              {"decimal", q.decimal(6)}};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ' ';
      s += scalar_text(e);
    }
    return s;
  }
  return v.dump();
}

// Nested objects become dotted keys.
void flatten(const Json& obj, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [key, v] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      flatten(v, name, out);
    } else {
      out.emplace_back(name, scalar_text(v));
    }
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(std::ostream& out, const Json& doc) {
  const Json rows = doc.is_array() ? doc : Json::array({doc});
  bool header = false;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(row, "", cells);
    if (!header) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i].first);
      out << '\n';
      header = true;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i].second);
    out << '\n';
  }
}

void write_key_values(std::ostream& out, const Json& doc) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(doc, "", cells);
  std::size_t width = 0;
  for (const auto& [k, v] : cells) width = std::max(width, k.size());
  for (const auto& [k, v] : cells) out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
}

void write_columns(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out << line << '\n';
  }
}

void emit(std::ostream& out, Format fmt, const Json& doc, const std::function<void(std::ostream&)>& text = {}) {
  switch (fmt) {
    case Format::json: out << doc.dump(2) << '\n'; break;
    case Format::csv: write_csv(out, doc); break;
    case Format::text:
      if (text) {
        text(out);
      } else {
        write_key_values(out, doc);
      }
      break;
  }
}

std::string expansion(const radix::RadixRep& rep) {
  std::string s;
  const std::size_t n = rep.digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    const u64 d = rep.digits[i];
    const std::size_t p = n - 1 - i;
    if (d == 0) continue;
    std::string power = p == 0 ? "" : p == 1 ? std::to_string(rep.base) : radix::power_string(rep.base, p);
    std::string term = p == 0 ? std::to_string(d) : d == 1 ? power : std::to_string(d) + "*" + power;
    s += (s.empty() ? "" : " + ") + term;
  }
  return std::to_string(rep.value) + " = " + s;
}

std::string verdict(bounds::Verdict v) { return std::string(bounds::to_string(v)); }

// Shared state of one invocation.
struct Context {
  Format format = Format::text;
  std::string registry_path;
  Registry registry;
  std::ostream& out;
  std::ostream& err;
};

int cmd_radix(Context& ctx, u64 value, u64 base) {
  const radix::RadixRep rep = radix::to_radix(value, base);
  Json doc{{"value", rep.value}, {"base", rep.base}, {"digits", rep.digits}, {"exponent", rep.exponent}};
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    o << expansion(rep) << '\n';
    o << "digits: " << scalar_text(doc["digits"]) << '\n';
    o << "exponent: " << rep.exponent << '\n';
  });
  return ok;
}

int cmd_table(Context& ctx, unsigned which, unsigned places) {
  Json doc = Json::array();
  std::vector<std::vector<std::string>> text;
  if (which == 1) {
    text.push_back({"r", "k", "n", "W(r, k) = N", "N = r^(log_r W)", "r^n"});
    for (const auto& row : bounds::table1(ctx.registry, places)) {
      doc.push_back(Json{{"r", row.r}, {"k", row.k}, {"n", row.n}, {"W", row.w},
                         {"exponent", row.exponent}, {"r_pow_n", row.r_pow_n}});
      text.push_back({std::to_string(row.r), std::to_string(row.k), std::to_string(row.n),
                      "W(" + std::to_string(row.r) + ", " + std::to_string(row.k) + ") = " + std::to_string(row.w),
                      std::to_string(row.w) + " = " + std::to_string(row.r) + "^" + row.exponent, row.r_pow_n});
    }
  } else {
    text.push_back({"r", "k", "sqrt(n+1)", "n", "ln r", "ln k", "r^n", "W(r, k)", "r^(n+1)", "r^(k^2)"});
    for (const auto& row : bounds::table2(ctx.registry)) {
      doc.push_back(Json{{"r", row.r}, {"k", row.k}, {"sqrt_n_plus_1", row.sqrt_n_plus_1}, {"n", row.n},
                         {"ln_r", row.ln_r}, {"ln_k", row.ln_k}, {"r_pow_n", row.r_pow_n}, {"W", row.w},
                         {"r_pow_n_plus_1", row.r_pow_n_plus_1}, {"r_pow_k_squared", row.r_pow_k_squared}});
      text.push_back({std::to_string(row.r), std::to_string(row.k), row.sqrt_n_plus_1, std::to_string(row.n),
                      row.ln_r, row.ln_k, row.r_pow_n, std::to_string(row.w), row.r_pow_n_plus_1,
                      row.r_pow_k_squared});
    }
  }
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) { write_columns(o, text); });
  return ok;
}

int cmd_theorem(Context& ctx, unsigned r, unsigned k, std::optional<unsigned> k_prime,
                const bounds::TheoremOverrides& overrides) {
  const bounds::TheoremReport rep = bounds::check_theorem(ctx.registry, r, k, k_prime, overrides);
  const Json null;
  const Json kp = k_prime ? Json(*k_prime) : null;
  const Json wp = rep.w_prime ? Json(*rep.w_prime) : null;
  const Json floor_wp = rep.w_prime ? Json(radix::floor_log(*rep.w_prime, r)) : null;
  const Json kp_sq = k_prime ? Json(u64{*k_prime} * *k_prime) : null;
  Json doc{{"r", r},
           {"k", k},
           {"k_prime", kp},
           {"n", rep.n},
           {"condition1", {{"verdict", verdict(rep.condition1)}, {"w", rep.w}, {"w_prime", wp}, {"k", k}, {"k_prime", kp}}},
           {"condition2", {{"verdict", verdict(rep.condition2)}, {"floor_log_w_prime", floor_wp}, {"n", rep.n}}},
           {"condition3", {{"verdict", verdict(rep.condition3)}, {"k_prime_squared", kp_sq}, {"n_plus_1", rep.n + 1}}},
           {"k_lower_bound_holds", {{"holds", rep.k_lower_bound_holds}, {"k_squared", rep.k_squared}, {"n_plus_1", rep.n + 1}}},
           {"conclusion_holds", {{"holds", rep.conclusion_holds},
                                 {"w", rep.w},
                                 {"r_pow_n_plus_1", radix::power_string(r, rep.n + 1)},
                                 {"r_pow_k_squared", radix::power_string(r, rep.k_squared)}}}};
  emit(ctx.out, ctx.format, doc);
  const bool failed = !rep.conclusion_holds || rep.condition1 == bounds::Verdict::fails ||
                      rep.condition2 == bounds::Verdict::fails || rep.condition3 == bounds::Verdict::fails;
  return failed ? negative : ok;
}

int cmd_ratio(Context& ctx, unsigned r, unsigned k) {
  const ratio::RatioAnalysis a = ratio::analyze(ctx.registry, r, k);
  const Rational rhs = ratio::exact_identity_rhs(ctx.registry, r, k);
  const Json binomial = a.gap >= 1 ? rational_json(ratio::binomial_expansion_estimate(ctx.registry, r, k)) : Json();
  Json doc{{"exact", rational_json(a.exact)},
           {"m_lo", a.m_lo},
           {"m_hi", a.m_hi},
           {"gap", a.gap},
           {"c_lead_lo", a.c_lead_lo},
           {"c_lead_hi", a.c_lead_hi},
           {"alpha", {{"alpha", a.alpha.alpha}, {"sign", std::string(ratio::to_string(a.alpha.sign))}}},
           {"leading_estimate", rational_json(a.leading_estimate)},
           {"r_form_estimate", rational_json(a.r_form_estimate)},
           {"residual", rational_json(a.residual)},
           {"identity_rhs", rational_json(rhs)},
           {"identity_holds", rhs == a.exact},
           {"binomial_estimate", binomial},
           {"gap_in_range", a.gap == 0 || a.gap == 1}};
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    Json shown = doc;
    for (auto& [key, v] : shown.items()) {
      if (v.is_object() && v.contains("numerator")) {
        const Json& d = v["denominator"];
        v = scalar_text(v["numerator"]) + (d == 1 ? "" : "/" + scalar_text(d)) + " = " + v["decimal"].get<std::string>();
      }
    }
    write_key_values(o, shown);
  });
  return rhs == a.exact ? ok : negative;
}

struct SearchFlags {
  unsigned r = 0;
  unsigned k = 0;
  std::optional<double> max_seconds;
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::size_t> max_length;
  std::string mode = "canonical";
  unsigned threads = 0;
  std::string cert_path;
  bool progress = false;
};

void append_registry_line(const std::string& path, const VdwRecord& rec) {
  std::ofstream f(path, std::ios::app);
  if (!f) throw std::runtime_error("cannot append to registry file " + path);
  f << rec.r << ' ' << rec.k << ' ' << rec.value << ' ' << rec.provenance.to_string() << '\n';
}

int cmd_search(Context& ctx, const SearchFlags& flags) {
  search::SearchOptions opt;
  opt.budget.max_seconds = flags.max_seconds;
  opt.budget.max_nodes = flags.max_nodes;
  opt.budget.max_length = flags.max_length;
  opt.mode = flags.mode == "parallel" ? search::Mode::parallel : search::Mode::canonical;
  opt.threads = flags.threads;
  if (flags.progress) {
    opt.on_progress = [&](std::size_t best, std::uint64_t nodes) {
      ctx.err << "best " << best << " after " << nodes << " nodes\n";
    };
  }

  const search::SearchOutcome res = search::compute_vdw(flags.r, flags.k, opt);
  ctx.err << "elapsed " << std::fixed << std::setprecision(3) << res.stats.elapsed_seconds << " s\n";
  if (!flags.cert_path.empty()) search::write_certificate(flags.cert_path, res.certificate);

  Json provenance;
  if (res.status == search::Status::exact) {
    const bool known = ctx.registry.lookup(flags.r, flags.k).has_value();
    const VdwRecord rec{flags.r, flags.k, res.value, Provenance::search_derived};
    try {
      ctx.registry.upsert_search_result(rec);
    } catch (const RegistryConflict& e) {
      throw Negative(e.what());
    }
    if (!known && !ctx.registry_path.empty()) append_registry_line(ctx.registry_path, rec);
    provenance = ctx.registry.require(flags.r, flags.k).provenance.to_string();
  }

  std::vector<unsigned> coloring(res.certificate.coloring.colors.begin(), res.certificate.coloring.colors.end());
  Json doc{{"r", flags.r},
           {"k", flags.k},
           {"mode", std::string(search::to_string(opt.mode))},
           {"status", std::string(search::to_string(res.status))},
           {"value", res.value},
           {"provenance", provenance},
           {"certificate", {{"r", res.certificate.r},
                            {"k", res.certificate.k},
                            {"length", res.certificate.length},
                            {"coloring", coloring}}},
           {"stats", {{"nodes", res.stats.nodes}, {"max_depth", res.stats.max_depth}}}};
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    const char* rel = res.status == search::Status::exact ? " = " : " >= ";
    o << "W(" << flags.r << "," << flags.k << ")" << rel << res.value << "  [" << search::to_string(res.status) << "]\n";
    o << "certificate length " << res.certificate.length;
    if (!flags.cert_path.empty()) o << " written to " << flags.cert_path;
    o << '\n';
    o << "nodes " << res.stats.nodes << ", max depth " << res.stats.max_depth << '\n';
  });
  return res.status == search::Status::budget_exhausted ? budget : ok;
}

int cmd_verify(Context& ctx, const std::string& path) {
  search::Certificate cert;
  {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    cert = search::read_certificate(in);
  }
  const bool valid = search::verify_certificate(cert);
  Json witness;
  std::string reason;
  if (!valid) {
    bool in_range = cert.r >= 2;
    for (auto c : cert.coloring.colors) in_range = in_range && c < cert.r;
    if (!in_range) {
      reason = "color out of range";
    } else if (cert.k < 3) {
      reason = "k must be at least 3";
    } else if (auto ap = search::find_monochromatic_ap(cert.coloring.colors, cert.k)) {
      reason = "monochromatic progression";
      witness = Json{{"start", ap->start}, {"step", ap->step}, {"color", ap->color}};
    }
  }
  Json doc{{"r", cert.r}, {"k", cert.k}, {"length", cert.length}, {"valid", valid}, {"reason", reason},
           {"progression", witness}};
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    o << (valid ? "valid" : "invalid") << ": W(" << cert.r << "," << cert.k << ") > " << cert.length;
    if (!valid) {
      o << " fails, " << reason;
      if (!witness.is_null()) {
        o << " at";
        for (unsigned j = 0; j < cert.k; ++j) o << ' ' << witness["start"].get<std::size_t>() + j * witness["step"].get<std::size_t>();
        o << " (color " << witness["color"].get<unsigned>() << ")";
      }
    }
    o << '\n';
  });
  return valid ? ok : negative;
}

int cmd_lookup(Context& ctx, unsigned r, unsigned k) {
  const auto rec = ctx.registry.lookup(r, k);
  Json doc{{"r", r}, {"k", k}, {"found", rec.has_value()}, {"value", rec ? Json(rec->value) : Json()},
           {"provenance", rec ? Json(rec->provenance.to_string()) : Json()}};
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    if (rec) {
      o << "W(" << r << "," << k << ") = " << rec->value << "  [" << rec->provenance.to_string() << "]\n";
    } else {
      o << "W(" << r << "," << k << ") not found\n";
    }
  });
  return rec ? ok : negative;
}

int cmd_gaps(Context& ctx) {
  Json doc = Json::array();
  bool all_in_range = true;
  for (const auto& g : ratio::gap_survey(ctx.registry)) {
    doc.push_back(Json{{"r", g.r}, {"k", g.k}, {"w_lo", g.w_lo}, {"w_hi", g.w_hi}, {"m_lo", g.m_lo},
                       {"m_hi", g.m_hi}, {"gap", g.gap}, {"in_expected_range", g.in_expected_range}});
    all_in_range = all_in_range && g.in_expected_range;
  }
  emit(ctx.out, ctx.format, doc, [&](std::ostream& o) {
    std::vector<std::vector<std::string>> rows{{"pair", "ratio", "m_k", "m_k+1", "gap"}};
    for (const auto& e : doc) {
      const auto r = e["r"].get<unsigned>();
      const auto k = e["k"].get<unsigned>();
      rows.push_back({"(" + std::to_string(r) + "," + std::to_string(k) + ")->(" + std::to_string(r) + "," +
                          std::to_string(k + 1) + ")",
                      e["w_hi"].dump() + "/" + e["w_lo"].dump(), e["m_lo"].dump(), e["m_hi"].dump(), e["gap"].dump()});
    }
    write_columns(o, rows);
  });
  return all_in_range ? ok : negative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"van der Waerden numbers: radix forms, bounds, ratios and exhaustive search", "vdw"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string registry_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--registry", registry_path, "extension file: `r k value provenance` per line")
        ->check(CLI::ExistingFile);
  };

  u64 value = 0;
  u64 base = 0;
  auto* radix_cmd = app.add_subcommand("radix", "digit expansion of a positive integer");
  radix_cmd->add_option("--value", value)->required();
  radix_cmd->add_option("--base", base)->required();
  add_common(radix_cmd);

  unsigned which = 0;
  unsigned places = 5;
  auto* table_cmd = app.add_subcommand("table", "regenerate table 1 or 2");
  table_cmd->add_option("--which", which)->required()->check(CLI::IsMember({1u, 2u}));
  table_cmd->add_option("--places", places, "decimals of the displayed logarithms")->check(CLI::Range(0u, 60u));
  add_common(table_cmd);

  unsigned r = 0;
  unsigned k = 0;
  std::optional<unsigned> k_prime;
  std::optional<u64> w;
  std::optional<u64> w_prime;
  auto* theorem_cmd = app.add_subcommand("theorem", "check the interval bound for one (r, k)");
  theorem_cmd->add_option("--r", r)->required();
  theorem_cmd->add_option("--k", k)->required();
  theorem_cmd->add_option("--k-prime", k_prime);
  theorem_cmd->add_option("--w", w, "use this W(r,k) instead of the registry");
  theorem_cmd->add_option("--w-prime", w_prime, "use this W(r,k') instead of the registry");
  add_common(theorem_cmd);

  auto* ratio_cmd = app.add_subcommand("ratio", "analyze W(r,k+1)/W(r,k)");
  ratio_cmd->add_option("--r", r)->required();
  ratio_cmd->add_option("--k", k)->required();
  add_common(ratio_cmd);

  auto* gaps_cmd = app.add_subcommand("gaps", "exponent gaps of consecutive registry pairs");
  add_common(gaps_cmd);

  auto* lookup_cmd = app.add_subcommand("lookup", "registry entry for (r, k)");
  lookup_cmd->add_option("--r", r)->required();
  lookup_cmd->add_option("--k", k)->required();
  add_common(lookup_cmd);

  SearchFlags sf;
  auto* search_cmd = app.add_subcommand("search", "compute W(r,k) by exhaustive search");
  search_cmd->add_option("--r", sf.r)->required();
  search_cmd->add_option("--k", sf.k)->required();
  search_cmd->add_option("--max-seconds", sf.max_seconds);
  search_cmd->add_option("--max-nodes", sf.max_nodes);
  search_cmd->add_option("--max-length", sf.max_length, "stop once a coloring of this length is known");
  search_cmd->add_option("--mode", sf.mode)->check(CLI::IsMember({"canonical", "parallel"}));
  search_cmd->add_option("--threads", sf.threads, "parallel mode; 0 = all");
  search_cmd->add_option("--cert", sf.cert_path, "write the certificate here");
  search_cmd->add_flag("--progress", sf.progress, "report each new lower bound on stderr");
  add_common(search_cmd);

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate file");
  verify_cmd->add_option("path", cert_path)->required();
  add_common(verify_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  Context ctx{format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text, registry_path,
              Registry::seeded(), out, err};
  try {
    if (!registry_path.empty()) ctx.registry.load_extension(std::filesystem::path(registry_path));
    if (*radix_cmd) return cmd_radix(ctx, value, base);
    if (*table_cmd) return cmd_table(ctx, which, places);
    if (*theorem_cmd) return cmd_theorem(ctx, r, k, k_prime, bounds::TheoremOverrides{w, w_prime});
    if (*ratio_cmd) return cmd_ratio(ctx, r, k);
    if (*gaps_cmd) return cmd_gaps(ctx);
    if (*lookup_cmd) return cmd_lookup(ctx, r, k);
    if (*search_cmd) return cmd_search(ctx, sf);
    if (*verify_cmd) return cmd_verify(ctx, cert_path);
  } catch (const Negative& e) {
    err << "error: " << e.what() << '\n';
    return negative;
  } catch (const RegistryConflict& e) {
    err << "error: " << e.what() << '\n';
    return negative;
  } catch (const std::exception& e) {
    // Missing registry pairs, malformed files and out-of-domain arguments.
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace vdw::cli
