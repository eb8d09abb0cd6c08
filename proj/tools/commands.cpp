#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "wzs/error.hpp"
#include "wzs/groups.hpp"
#include "wzs/monoid.hpp"
#include "wzs/qforms.hpp"
#include "wzs/sequences.hpp"
#include "wzs/structure.hpp"

namespace wzs::cli {

using Json = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Position of the first occurrence of "key" as an object key, for messages.
std::pair<std::size_t, std::size_t> key_position(std::string_view text, const std::string& key) {
  const auto at = text.find('"' + key + '"');
  return line_column(text, at == std::string_view::npos ? 0 : at);
}

std::string join_ints(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "}";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

GroupLimits limits_of(const RunConfig& cfg) { return {cfg.order_cap, cfg.aut_cap}; }

struct Setting {
  FiniteAbelianGroup group;
  WeightSet weights;
};

Setting setting_of(const RunConfig& cfg) {
  auto g = FiniteAbelianGroup::parse(cfg.group, limits_of(cfg));
  auto w = WeightSet::parse(cfg.weights, g, limits_of(cfg));
  return {g, w};
}

/// Text tables from rows of cells, columns left aligned to the widest cell.
std::string table_text(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string subset_text(const GSubset& s, const FiniteAbelianGroup& g) {
  std::string out = "{";
  bool first = true;
  for (ElemId x : s.elements(g.order())) {
    if (!first) out += ',';
    first = false;
    out += g.format(x);
  }
  return out + "}";
}

Json subset_json(const GSubset& s, const FiniteAbelianGroup& g) {
  Json arr = Json::array();
  for (ElemId x : s.elements(g.order())) arr.push_back(g.format(x));
  return arr;
}

enum class Format { Text, Json, Csv };

Format format_of(const RunConfig& cfg, Format fallback, bool csv_allowed) {
  if (cfg.format.empty()) return fallback;
  if (cfg.format == "text") return Format::Text;
  if (cfg.format == "json") return Format::Json;
  if (cfg.format == "csv" && csv_allowed) return Format::Csv;
  throw CLI::ValidationError("--format", "unsupported format '" + cfg.format + "' for this command");
}

std::string header(const Setting& s) {
  return "group " + s.group.spec() + "  order " + std::to_string(s.group.order()) + "  weights " +
         s.weights.spec() + "  |Gamma| " + std::to_string(s.weights.size()) + "\n";
}

Json header_json(const Setting& s) {
  Json j;
  j["group"] = s.group.spec();
  j["order"] = s.group.order();
  j["weights"] = s.weights.spec();
  j["gamma_size"] = s.weights.size();
  return j;
}

// --- commands -------------------------------------------------------------

void cmd_atoms(const RunConfig& cfg, std::ostream& out) {
  const auto s = setting_of(cfg);
  const MonoidHandle h(s.weights);
  const auto& list = atoms(h);
  const int D = davenport_large(h);
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j = header_json(s);
    j["atom_count"] = list.size();
    j["davenport"] = D;
    Json arr = Json::array();
    for (const auto& a : list) arr.push_back(a.to_string());
    j["atoms"] = arr;
    out << j.dump(2) << "\n";
    return;
  }
  out << header(s) << "atoms " << list.size() << "\nD " << D << "\n";
  for (const auto& a : list) out << a.to_string() << "\n";
}

void cmd_invariants(const RunConfig& cfg, std::ostream& out) {
  const auto s = setting_of(cfg);
  const MonoidHandle h(s.weights);
  const int L = cfg.length_bound;
  const int D = davenport_large(h);
  const int d = davenport_small(h);
  const auto table = LengthTable::build(h, L);
  const auto delta = delta_set(table);
  const auto cat = catenary_degree(h, L);
  const auto om = omega(h, cfg.omega_cap);

  struct Row {
    int k;
    UnionResult u;
    std::optional<Interval> predicted;
  };
  std::vector<Row> rows;
  const int kmax = std::max(2, L / std::max(D, 1));
  for (int k = 2; k <= kmax; ++k) {
    Row r{k, unions_Uk(table, k, D), std::nullopt};
    if (s.weights.kind() == WeightKind::PlusMinus) {
      try {
        r.predicted = predicted_union_interval(s.group, k);
      } catch (const Error&) {
        // Hypotheses of the formula fail for this group.
      }
    }
    rows.push_back(std::move(r));
  }
  auto matches = [](const Row& r) {
    if (!r.predicted) return std::string("-");
    std::vector<int> want;
    for (int x = r.predicted->lo; x <= r.predicted->hi; ++x) want.push_back(x);
    return yes_no(want == r.u.values);
  };

  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j = header_json(s);
    j["bounds"] = {{"length_bound", L}, {"omega_cap", cfg.omega_cap}};
    j["davenport_large"] = D;
    j["davenport_small"] = d;
    j["delta_set"] = delta;
    j["catenary"] = {{"value", cat.value}, {"exact", cat.exact}};
    j["omega"] = {{"value", om.value}, {"exact", om.exact}};
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json e;
      e["k"] = r.k;
      e["U_k"] = r.u.values;
      e["rho_k"] = r.u.values.empty() ? 0 : r.u.values.back();
      e["lambda_k"] = r.u.values.empty() ? 0 : r.u.values.front();
      e["exact"] = r.u.exact;
      if (r.predicted) {
        e["predicted"] = {r.predicted->lo, r.predicted->hi};
        e["matches"] = matches(r) == "yes";
      } else {
        e["predicted"] = nullptr;
      }
      arr.push_back(e);
    }
    j["unions"] = arr;
    out << j.dump(2) << "\n";
    return;
  }
  out << header(s) << "bounds  length_bound " << L << "  omega_cap " << cfg.omega_cap << "\n";
  auto flag = [](bool exact) { return exact ? "exact" : "lower bound"; };
  out << "D " << D << "\nd " << d << "\n";
  out << "delta@" << L << " " << join_ints(delta) << "\n";
  out << "catenary@" << L << " " << cat.value << " (" << flag(cat.exact) << ")\n";
  out << "omega@" << cfg.omega_cap << " " << om.value << " (" << flag(om.exact) << ")\n";
  std::vector<std::vector<std::string>> t{{"k", "U_k", "rho_k", "lambda_k", "exact", "predicted", "match"}};
  for (const auto& r : rows) {
    const auto& v = r.u.values;
    t.push_back({std::to_string(r.k), join_ints(v), v.empty() ? "-" : std::to_string(v.back()),
                 v.empty() ? "-" : std::to_string(v.front()), yes_no(r.u.exact),
                 r.predicted ? "[" + std::to_string(r.predicted->lo) + "," + std::to_string(r.predicted->hi) + "]"
                             : "-",
                 matches(r)});
  }
  out << table_text(t);
}

void cmd_lengths(const RunConfig& cfg, const std::string& literal, std::ostream& out) {
  const auto s = setting_of(cfg);
  const MonoidHandle h(s.weights);
  const auto b = Sequence::parse(s.group, literal);
  if (!h.contains(b)) fail(ErrorCode::NotInMonoid, b.to_string());
  const auto zs = factorizations(h, b);
  const auto l = set_of_lengths(h, b);
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j = header_json(s);
    j["sequence"] = b.to_string();
    j["factorization_count"] = zs.size();
    j["lengths"] = l;
    out << j.dump(2) << "\n";
    return;
  }
  out << header(s) << "sequence " << b.to_string() << "\nfactorizations " << zs.size() << "\nL "
      << join_ints(l) << "\n";
}

void cmd_seminormal(const RunConfig& cfg, int search_length, std::ostream& out) {
  const auto s = setting_of(cfg);
  const auto rep = is_seminormal(s.weights, search_length);
  std::optional<StructureReport> krull;
  std::string krull_note;
  try {
    krull = krull_characterization(s.weights);
  } catch (const Error& e) {
    krull_note = e.what();
  }
  const auto pred = rep.seminormal_predicted ? yes_no(*rep.seminormal_predicted) : std::string("unknown");
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j = header_json(s);
    j["search_length"] = rep.length_bound;
    j["seminormal"] = rep.seminormal;
    j["seminormal_predicted"] = rep.seminormal_predicted ? Json(*rep.seminormal_predicted) : Json(nullptr);
    j["witness"] = rep.witness ? Json(rep.witness->to_string()) : Json(nullptr);
    if (krull) {
      j["krull"] = krull->krull_expected;
      j["root_closed"] = krull->root_closed_expected;
      j["weakly_krull"] = krull->weakly_krull_expected;
      j["transfer_krull"] = krull->transfer_krull_expected;
      j["acts_trivially"] = krull->acts_trivially;
      j["witness_case"] = krull->witness_case;
      j["witness_verified"] = krull->witness_verified;
    } else {
      j["krull"] = nullptr;
      j["krull_note"] = krull_note;
    }
    out << j.dump(2) << "\n";
    return;
  }
  out << header(s) << "bounds  search_length " << rep.length_bound << "\n";
  out << "seminormal (search) " << yes_no(rep.seminormal) << "\n";
  out << "seminormal (group shape) " << pred << "\n";
  out << "witness " << (rep.witness ? rep.witness->to_string() : "-") << "\n";
  if (!krull) {
    out << "krull n/a: " << krull_note << "\n";
    return;
  }
  out << "krull " << yes_no(krull->krull_expected) << "\nroot closed " << yes_no(krull->root_closed_expected)
      << "\nweakly krull " << yes_no(krull->weakly_krull_expected) << "\ntransfer krull "
      << yes_no(krull->transfer_krull_expected) << "\nacts trivially " << yes_no(krull->acts_trivially) << "\n";
  if (krull->witness_case > 0) {
    out << "non-weakly-krull witness case " << krull->witness_case << " verified "
        << yes_no(krull->witness_verified) << "\n";
  }
}

void cmd_class_semigroup(const RunConfig& cfg, std::ostream& out) {
  const auto s = setting_of(cfg);
  const auto cs = class_semigroup(s.weights);
  const auto& g = s.group;
  const std::size_t n = cs.elements.size();
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j = header_json(s);
    Json legend = Json::array();
    for (const auto& e : cs.elements) legend.push_back(subset_json(e, g));
    j["elements"] = legend;
    j["table"] = cs.table;
    j["identity"] = cs.identity;
    j["idempotents"] = cs.idempotents;
    Json edges = Json::array();
    for (const auto& [a, b] : cs.rees_edges) edges.push_back({a, b});
    j["rees_edges"] = edges;
    Json groups = Json::array();
    for (std::size_t k = 0; k < cs.idempotents.size(); ++k) {
      groups.push_back({{"idempotent", cs.idempotents[k]}, {"elements", cs.constituent[k]}});
    }
    j["constituent_groups"] = groups;
    j["clifford"] = cs.clifford;
    out << j.dump(2) << "\n";
    return;
  }
  out << header(s) << "classes " << n << "  clifford " << yes_no(cs.clifford) << "\n";
  out << "legend\n";
  for (std::size_t i = 0; i < n; ++i) out << "  " << i << " " << subset_text(cs.elements[i], g) << "\n";
  std::vector<std::vector<std::string>> t{{"+"}};
  for (std::size_t i = 0; i < n; ++i) t[0].push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t k = 0; k < n; ++k) row.push_back(std::to_string(cs.table[i][k]));
    t.push_back(row);
  }
  out << "table\n" << table_text(t);
  out << "idempotents";
  for (auto e : cs.idempotents) out << " " << e;
  out << "\nrees edges (e < f)";
  for (const auto& [a, b] : cs.rees_edges) out << " " << a << "<" << b;
  out << "\nconstituent groups\n";
  for (std::size_t k = 0; k < cs.idempotents.size(); ++k) {
    out << "  e=" << cs.idempotents[k] << " order " << cs.constituent[k].size() << " :";
    for (auto x : cs.constituent[k]) out << " " << x;
    out << "\n";
  }
}

std::string factors_text(const FiniteAbelianGroup& g) {
  if (g.order() == 1) return "trivial";
  std::string out;
  for (int f : g.invariant_factors()) out += (out.empty() ? "C" : " x C") + std::to_string(f);
  return out;
}

void cmd_qform_classgroup(const RunConfig& cfg, long long disc, std::ostream& out) {
  const auto cg = FormClassGroup::build(Discriminant::make(disc), limits_of(cfg));
  const auto& d = cg.discriminant();
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j;
    j["discriminant"] = d.value;
    j["fundamental"] = d.fundamental;
    j["conductor"] = d.conductor;
    j["class_number"] = cg.class_number();
    j["invariant_factors"] = cg.group().invariant_factors();
    Json arr = Json::array();
    for (std::size_t i = 0; i < cg.class_number(); ++i) {
      arr.push_back({{"form", cg.classes()[i].to_string()},
                     {"element", cg.group().format(cg.to_group(i))},
                     {"inverse", cg.negate(i)}});
    }
    j["classes"] = arr;
    out << j.dump(2) << "\n";
    return;
  }
  out << "discriminant " << d.value << "  fundamental " << d.fundamental << "  conductor " << d.conductor << "\n";
  out << "class number " << cg.class_number() << "  group " << factors_text(cg.group()) << "\n";
  std::vector<std::vector<std::string>> t{{"index", "form", "element", "inverse"}};
  for (std::size_t i = 0; i < cg.class_number(); ++i) {
    t.push_back({std::to_string(i), cg.classes()[i].to_string(), cg.group().format(cg.to_group(i)),
                 std::to_string(cg.negate(i))});
  }
  out << table_text(t);
}

void cmd_qform_check(const RunConfig& cfg, long long disc, long long n, std::ostream& out) {
  if (n < 1) fail(ErrorCode::OutOfRange, "--n must be >= 1");
  const auto cg = FormClassGroup::build(Discriminant::make(disc), limits_of(cfg));
  const bool admissible = is_admissible(cg, n);
  const bool brute = represents_principal_bruteforce(cg.discriminant(), n);
  std::optional<bool> transfer;
  std::optional<Sequence> theta;
  std::optional<LengthSet> lm;
  std::optional<LengthSet> ls;
  if (admissible) {
    theta = theta_prime(cg, n);
    transfer = in_Rcirc_via_transfer(cg, n);
    if (*transfer && brute) {
      lm = lengths_in_Rcirc(cg, n);
      ls = set_of_lengths(cg.monoid(), *theta);
    }
  }
  if (format_of(cfg, Format::Text, false) == Format::Json) {
    Json j;
    j["discriminant"] = cg.discriminant().value;
    j["n"] = n;
    j["prime_signature"] = prime_signature(n);
    j["admissible"] = admissible;
    j["represented"] = brute;
    j["theta_prime"] = theta ? Json(theta->to_string()) : Json(nullptr);
    j["transfer_verdict"] = transfer ? Json(*transfer) : Json(nullptr);
    j["lengths_monoid"] = lm ? Json(*lm) : Json(nullptr);
    j["lengths_sequences"] = ls ? Json(*ls) : Json(nullptr);
    out << j.dump(2) << "\n";
    return;
  }
  out << "discriminant " << cg.discriminant().value << "  n " << n << " = " << prime_signature(n) << "\n";
  out << "admissible " << yes_no(admissible) << "\n";
  out << (brute ? "represented" : "not represented") << " by the principal form\n";
  if (theta) out << "theta' " << theta->to_string() << "\ntransfer verdict " << yes_no(*transfer) << "\n";
  if (lm) out << "L (integers) " << join_ints(*lm) << "\nL (sequences) " << join_ints(*ls) << "\n";
}

std::string csv_cell(const std::optional<LengthSet>& l) {
  if (!l) return "";
  return "\"" + join_ints(*l) + "\"";
}

void cmd_qform_sweep(const RunConfig& cfg, long long disc, std::ostream& out) {
  const auto cg = FormClassGroup::build(Discriminant::make(disc), limits_of(cfg));
  const auto rows = sweep(cg, cfg.max_n, cfg.lengths_max_n);
  const auto fmt = format_of(cfg, Format::Csv, true);
  if (fmt == Format::Json) {
    Json j;
    j["discriminant"] = cg.discriminant().value;
    j["bounds"] = {{"max_n", cfg.max_n}, {"lengths_max_n", cfg.lengths_max_n}};
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n},
                     {"prime_signature", r.prime_signature},
                     {"transfer_verdict", r.transfer},
                     {"bruteforce_verdict", r.bruteforce},
                     {"lengths_monoid", r.lengths_monoid ? Json(*r.lengths_monoid) : Json(nullptr)},
                     {"lengths_sequences", r.lengths_sequences ? Json(*r.lengths_sequences) : Json(nullptr)}});
    }
    j["rows"] = arr;
    out << j.dump(2) << "\n";
    return;
  }
  if (fmt == Format::Text) {
    out << "discriminant " << cg.discriminant().value << "  max_n " << cfg.max_n << "  lengths_max_n "
        << cfg.lengths_max_n << "\n";
    std::size_t agree = 0;
    for (const auto& r : rows) agree += r.transfer == r.bruteforce;
    out << "admissible " << rows.size() << "  verdicts agree " << agree << "\n";
    return;
  }
  out << "# discriminant " << cg.discriminant().value << " max_n " << cfg.max_n << " lengths_max_n "
      << cfg.lengths_max_n << "\n";
  out << "n,prime_signature,transfer_verdict,bruteforce_verdict,lengths_monoid,lengths_sequences\n";
  for (const auto& r : rows) {
    out << r.n << "," << r.prime_signature << "," << (r.transfer ? 1 : 0) << "," << (r.bruteforce ? 1 : 0) << ","
        << csv_cell(r.lengths_monoid) << "," << csv_cell(r.lengths_sequences) << "\n";
  }
}

template <class T>
void require_positive(const std::string& key, T v, std::string_view text) {
  if (v <= 0) {
    const auto [line, col] = key_position(text, key);
    throw ParseError("config key '" + key + "' must be positive", line, col);
  }
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed config JSON", line, col);
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 1, 1);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    auto pos = [&] { return key_position(text, key); };
    auto need = [&](bool ok, const char* what) {
      if (!ok) {
        const auto [line, col] = pos();
        throw ParseError("config key '" + key + "' must be " + what, line, col);
      }
    };
    if (key == "group" || key == "weights" || key == "format") {
      need(v.is_string(), "a string");
      (key == "group" ? base.group : key == "weights" ? base.weights : base.format) = v.get<std::string>();
    } else if (key == "order_cap" || key == "aut_cap" || key == "length_bound" || key == "omega_cap" ||
               key == "max_n" || key == "lengths_max_n") {
      need(v.is_number_integer(), "an integer");
      const auto x = v.get<long long>();
      require_positive(key, x, text);
      if (key == "order_cap") base.order_cap = static_cast<std::size_t>(x);
      if (key == "aut_cap") base.aut_cap = static_cast<std::size_t>(x);
      if (key == "length_bound") base.length_bound = static_cast<int>(x);
      if (key == "omega_cap") base.omega_cap = static_cast<int>(x);
      if (key == "max_n") base.max_n = x;
      if (key == "lengths_max_n") base.lengths_max_n = x;
    } else {
      const auto [line, col] = pos();
      throw ParseError("unknown config key '" + key + "'", line, col);
    }
  }
  if (!base.format.empty() && base.format != "text" && base.format != "json" && base.format != "csv") {
    const auto [line, col] = key_position(text, "format");
    throw ParseError("format must be text, json or csv", line, col);
  }
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted zero-sum sequence monoids and binary quadratic forms"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path;
  std::string out_path;
  auto* o_config = app.add_option("--config", config_path, "JSON file with RunConfig keys");
  auto* o_group = app.add_option("--group", flags.group, "invariant factors, e.g. 2,4");
  auto* o_weights = app.add_option("--weights", flags.weights, "id | pm | aut");
  auto* o_format = app.add_option("--format", flags.format, "text | json | csv")->check(
      CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "write output to FILE");
  auto* o_order = app.add_option("--order-cap", flags.order_cap)->check(CLI::PositiveNumber);
  auto* o_aut = app.add_option("--aut-cap", flags.aut_cap)->check(CLI::PositiveNumber);
  auto* o_len = app.add_option("--length-bound", flags.length_bound)->check(CLI::PositiveNumber);
  auto* o_omega = app.add_option("--omega-cap", flags.omega_cap)->check(CLI::PositiveNumber);
  auto* o_maxn = app.add_option("--max-n", flags.max_n)->check(CLI::PositiveNumber);
  auto* o_lmaxn = app.add_option("--lengths-max-n", flags.lengths_max_n)->check(CLI::PositiveNumber);

  auto* c_atoms = app.add_subcommand("atoms", "list the atoms");
  auto* c_inv = app.add_subcommand("invariants", "Davenport constants and factorization invariants");
  auto* c_len = app.add_subcommand("lengths", "set of lengths of one sequence");
  std::string seq_literal;
  c_len->add_option("--seq", seq_literal, "sequence literal, e.g. [(1)^5,(4)^5]")->required();
  auto* c_semi = app.add_subcommand("seminormal", "seminormality search and Krull verdict");
  int search_length = 3;
  c_semi->add_option("--search-length", search_length, "longest candidate witness")->check(CLI::PositiveNumber);
  auto* c_cs = app.add_subcommand("class-semigroup", "class semigroup of the weighted monoid");
  auto* c_q = app.add_subcommand("qform", "binary quadratic forms");
  c_q->require_subcommand(1);
  long long disc = 0;
  long long n_value = 0;
  auto* q_cg = c_q->add_subcommand("classgroup", "form class group");
  auto* q_check = c_q->add_subcommand("check", "represent n and compare with the transfer");
  auto* q_sweep = c_q->add_subcommand("sweep", "transfer vs brute force for admissible n <= max-n");
  for (auto* sc : {q_cg, q_check, q_sweep}) sc->add_option("--disc", disc, "negative discriminant")->required();
  q_check->add_option("--n", n_value)->required();
  auto* c_acc = app.add_subcommand("acceptance", "run the acceptance suite");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage: " << e.what() << "\n";
    return kUsage;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    RunConfig cfg;
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::ParseError, "cannot read config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = parse_config(ss.str());
    }
    if (o_group->count()) cfg.group = flags.group;
    if (o_weights->count()) cfg.weights = flags.weights;
    if (o_format->count()) cfg.format = flags.format;
    if (o_order->count()) cfg.order_cap = flags.order_cap;
    if (o_aut->count()) cfg.aut_cap = flags.aut_cap;
    if (o_len->count()) cfg.length_bound = flags.length_bound;
    if (o_omega->count()) cfg.omega_cap = flags.omega_cap;
    if (o_maxn->count()) cfg.max_n = flags.max_n;
    if (o_lmaxn->count()) cfg.lengths_max_n = flags.lengths_max_n;

    if (*c_atoms) cmd_atoms(cfg, buffer);
    if (*c_inv) cmd_invariants(cfg, buffer);
    if (*c_len) cmd_lengths(cfg, seq_literal, buffer);
    if (*c_semi) cmd_seminormal(cfg, search_length, buffer);
    if (*c_cs) cmd_class_semigroup(cfg, buffer);
    if (*q_cg) cmd_qform_classgroup(cfg, disc, buffer);
    if (*q_check) cmd_qform_check(cfg, disc, n_value, buffer);
    if (*q_sweep) cmd_qform_sweep(cfg, disc, buffer);
    // Acceptance streams its lines as criteria finish.
    if (*c_acc && run_acceptance(out_path.empty() ? out : buffer) > 0) code = kAcceptanceFailed;
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool cap = e.code() == ErrorCode::OrderCapExceeded || e.code() == ErrorCode::BoundTooLarge;
    return cap ? kCapExceeded : kUsage;
  }

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return kUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace wzs::cli
