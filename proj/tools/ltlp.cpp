// ltlp — command-line front end.
//
// Subcommands: classify, eval, canonicalize, galpha, monitor, equiv,
// contains, sigma, separation.  Exit codes: 0 success/affirmative,
// 1 negative answer (with a structured counterexample where applicable),
// 2 usage or parse errors, 3 resource cap exceeded.  Results go to stdout
// (or --out), diagnostics to stderr.  JSON output is the stable machine
// contract; text output is for humans.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ltlp/monitor.hpp"
#include "ltlp/parser.hpp"
#include "ltlp/separation.hpp"

using json = nlohmann::ordered_json;
using namespace ltlp;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Alphabet alphabet_from_flag(const std::string& flag) {
  Alphabet a;
  std::string cur;
  for (char c : flag + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) a.add(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return a;
}

// props mentioned in a word literal, in first-occurrence order
void collect_word_props(const std::string& text, Alphabet& a) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t end = i;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
        ++end;
      std::string name = text.substr(i, end - i);
      if (!a.contains(name)) a.add(name);
      i = end;
    } else {
      ++i;
    }
  }
}

Alphabet resolve_alphabet(const std::string& flag,
                          const std::vector<std::string>& formulas,
                          const std::vector<std::string>& words = {}) {
  if (!flag.empty()) return alphabet_from_flag(flag);
  Alphabet a;
  for (const auto& f : formulas) parse_collect(f, a);
  for (const auto& w : words) collect_word_props(w, a);
  if (a.size() == 0) a.add("p1");  // degenerate constant-only inputs
  return a;
}

json letter_json(Letter l, const Alphabet& a) {
  json arr = json::array();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (l & (Letter{1} << i)) arr.push_back(a.name(i));
  return arr;
}

json word_json(const LassoWord& w) {
  json stem = json::array(), loop = json::array();
  for (Letter l : w.stem) stem.push_back(letter_json(l, w.alphabet));
  for (Letter l : w.loop) loop.push_back(letter_json(l, w.alphabet));
  return json{{"stem", stem}, {"loop", loop}};
}

json cex_json(const Counterexample& cex) {
  return json{{"word", word_json(cex.word)},
              {"holds_in",
               cex.holds_in == Counterexample::Side::Left ? "left" : "right"}};
}

struct Output {
  std::string path;  // empty: stdout
  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream out(path);
      if (!out) throw UsageError("cannot open output file: " + path);
      out << text;
      if (text.empty() || text.back() != '\n') out << '\n';
    }
  }
  void emit(const json& j) const { emit(j.dump(2)); }
};

json classify_json(const Formula& f) {
  FragmentReport r = classify(f);
  json flags{{"is_ltlp", r.is_ltlp},
             {"is_pure_past", r.is_pure_past},
             {"is_bounded_past", r.is_bounded_past},
             {"is_bounded_future_layer", r.is_bounded_future_layer},
             {"is_future_layer", r.is_future_layer},
             {"is_ltlebr", r.is_ltlebr},
             {"is_ltlebrp", r.is_ltlebrp},
             {"is_safetyltl", r.is_safetyltl},
             {"is_canonical", r.is_canonical}};
  json trace = json::array();
  for (const auto& [sub, layer] : r.layer_trace)
    trace.push_back(json{{"subformula", sub}, {"layer", layer}});
  return json{{"formula", to_string(f)}, {"flags", flags}, {"layer_trace", trace}};
}

json canonical_json(const Formula& input, const CanonicalizeResult& r, bool with_galpha) {
  json terms = json::array();
  r.canonical.for_each_term([&](const CanonicalTerm& t) {
    json term{{"kind", t.kind == TermKind::Point    ? "point"
               : t.kind == TermKind::Always ? "always"
                                            : "release"},
              {"offset", t.offset},
              {"alpha", to_string(t.alpha)}};
    if (t.kind == TermKind::Release) term["beta"] = to_string(t.beta);
    terms.push_back(term);
  });
  json out{{"input", to_string(input)},
           {"canonical", to_string(r.canonical)},
           {"bounded_payloads", r.canonical.bounded_payloads()},
           {"terms", terms},
           {"trace", r.trace}};
  if (with_galpha) out["galpha"] = to_string(to_galpha(r.canonical));
  return out;
}

json separation_json(const SeparationReport& rep, std::size_t membership_checked,
                     std::size_t membership_mismatches, std::size_t window_checked,
                     std::size_t window_failures) {
  json grid = json::array();
  for (auto [dj, dk] : rep.margin_grid) grid.push_back(json::array({dj, dk}));
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) {
    json entry{{"formula", v.formula},
               {"next_depth", v.next_depth},
               {"payload_depth", v.payload_depth},
               {"disagreements", v.disagreements}};
    if (v.disagreements > 0) {
      json pairs = json::array();
      for (const auto& p : v.pairs)
        if (!p.agree())
          pairs.push_back(json{{"i", p.i},
                               {"j", p.j},
                               {"k", p.k},
                               {"value_ii", p.value_ii},
                               {"value_ik", p.value_ik}});
      entry["failing_pairs"] = pairs;
    }
    verdicts.push_back(entry);
  }
  return json{
      {"parameters",
       {{"source", rep.source},
        {"seed", rep.seed},
        {"max_next", rep.max_next},
        {"max_d", rep.max_d},
        {"margin_grid", grid}}},
      {"membership_sweep", {{"checked", membership_checked}, {"mismatches", membership_mismatches}}},
      {"window_correspondence", {{"checked", window_checked}, {"failures", window_failures}}},
      {"indistinguishability",
       {{"formulas", rep.formulas_checked},
        {"disagreements", rep.total_disagreements},
        {"phi_g_witness_ok", rep.phi_g_witness_ok},
        {"verdicts", verdicts}}}};
}

std::string separation_markdown(const SeparationReport& rep, std::size_t membership_checked,
                                std::size_t membership_mismatches,
                                std::size_t window_checked, std::size_t window_failures) {
  std::string md = "# Separation report\n\n";
  md += "| check | size | failures |\n|---|---|---|\n";
  md += "| membership sweep (i,k,j <= 6) | " + std::to_string(membership_checked) + " | " +
        std::to_string(membership_mismatches) + " |\n";
  md += "| interval correspondence (d <= 3) | " + std::to_string(window_checked) +
        " | " + std::to_string(window_failures) + " |\n";
  md += "| indistinguishability formulas | " + std::to_string(rep.formulas_checked) +
        " | " + std::to_string(rep.total_disagreements) + " |\n";
  md += "| separating witness G(p1 \\| G p2) | " +
        std::to_string(rep.formulas_checked * rep.margin_grid.size()) + " pairs | " +
        std::string(rep.phi_g_witness_ok ? "0" : ">0") + " |\n";
  md += "\nFormulas with disagreements:\n";
  bool any = false;
  for (const auto& v : rep.verdicts)
    if (v.disagreements > 0) {
      any = true;
      md += "- `" + v.formula + "` (" + std::to_string(v.disagreements) + " pairs)\n";
    }
  if (!any) md += "- none\n";
  return md;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety fragments of LTL with past: classification, evaluation, "
               "canonicalization, monitors, and separation experiments"};
  app.require_subcommand(1);

  std::string alphabet_flag, format = "text", out_path;
  app.add_option("--alphabet", alphabet_flag,
                 "comma-separated proposition names (default: inferred)");
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the result to a file instead of stdout");
  std::size_t max_states = detail::kDefaultMaxStates;
  app.add_option("--max-states", max_states, "monitor state cap")
      ->check(CLI::PositiveNumber);

  // classify
  std::string cls_formula;
  CLI::App* cls = app.add_subcommand("classify", "fragment membership of a formula");
  cls->add_option("formula", cls_formula)->required();

  // eval
  std::string ev_formula, ev_word;
  std::size_t ev_at = 0;
  CLI::App* ev = app.add_subcommand("eval", "evaluate a formula on a lasso word");
  ev->add_option("formula", ev_formula)->required();
  ev->add_option("--word", ev_word, "lasso word, e.g. \"{p1 p2}{p1};{p2}\"")
      ->required();
  ev->add_option("--at", ev_at, "evaluation position (default 0)");

  // canonicalize / galpha
  std::string can_formula, can_emit = "canonical";
  CLI::App* can = app.add_subcommand("canonicalize",
                                     "rewrite an LTLEBR+P formula into canonical form");
  can->add_option("formula", can_formula)->required();
  can->add_option("--emit", can_emit, "canonical or galpha")
      ->check(CLI::IsMember({"canonical", "galpha"}));
  std::string ga_formula;
  CLI::App* ga = app.add_subcommand("galpha", "single-G pure-past normal form");
  ga->add_option("formula", ga_formula)->required();

  // monitor
  std::string mon_formula;
  bool mon_dot = false;
  CLI::App* mon = app.add_subcommand("monitor", "compile a deterministic monitor");
  mon->add_option("formula", mon_formula)->required();
  mon->add_flag("--dot", mon_dot, "emit the automaton in DOT");

  // equiv / contains
  std::string eq_f1, eq_f2;
  CLI::App* eq = app.add_subcommand("equiv", "language equivalence of two formulas");
  eq->add_option("formula1", eq_f1)->required();
  eq->add_option("formula2", eq_f2)->required();
  std::string co_f1, co_f2;
  CLI::App* co = app.add_subcommand("contains", "language containment: L(f1) in L(f2)");
  co->add_option("formula1", co_f1)->required();
  co->add_option("formula2", co_f2)->required();

  // sigma
  std::size_t sg_i = 0, sg_k = 0, sg_j = 0;
  CLI::App* sg = app.add_subcommand("sigma", "the three-index word family");
  sg->add_option("i", sg_i)->required();
  sg->add_option("k", sg_k)->required();
  sg->add_option("j", sg_j)->required();

  // separation
  std::size_t sep_max_next = 1, sep_max_d = 1, sep_samples = 200;
  std::uint32_t sep_seed = 42;
  bool sep_markdown = false, sep_strict = false;
  CLI::App* sep = app.add_subcommand("separation", "run the separation experiments");
  sep->add_option("--max-next", sep_max_next, "maximal X-offset of generated terms");
  sep->add_option("--max-d", sep_max_d, "maximal payload temporal depth");
  sep->add_option("--samples", sep_samples, "number of sampled formulas");
  sep->add_option("--seed", sep_seed, "sampling seed");
  sep->add_flag("--markdown", sep_markdown, "emit a human-readable summary table");
  sep->add_flag("--strict-margins", sep_strict,
                "use index margins one past the payload depth");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  Output output{out_path};

  try {
    if (*cls) {
      Alphabet a = resolve_alphabet(alphabet_flag, {cls_formula});
      Formula f = parse(cls_formula, a);
      // the report is a JSON contract regardless of --format
      output.emit(classify_json(f));
      return 0;
    }

    if (*ev) {
      Alphabet a = resolve_alphabet(alphabet_flag, {ev_formula}, {ev_word});
      Formula f = parse(ev_formula, a);
      LassoWord w = parse_lasso(ev_word, a);
      bool value = eval_at(w, ev_at, f);
      if (format == "json")
        output.emit(json{{"formula", to_string(f)},
                         {"word", word_json(w)},
                         {"at", ev_at},
                         {"value", value}});
      else
        output.emit(std::string(value ? "true" : "false"));
      return value ? 0 : 1;
    }

    if (*can) {
      Alphabet a = resolve_alphabet(alphabet_flag, {can_formula});
      Formula f = parse(can_formula, a);
      CanonicalizeResult r = canonicalize(f);
      if (format == "json") {
        output.emit(canonical_json(f, r, can_emit == "galpha"));
      } else {
        std::string text = can_emit == "galpha" ? to_string(to_galpha(r.canonical))
                                                : to_string(r.canonical);
        text += "\n";
        for (const auto& line : r.trace) text += "  # " + line + "\n";
        output.emit(text);
      }
      return 0;
    }

    if (*ga) {
      Alphabet a = resolve_alphabet(alphabet_flag, {ga_formula});
      Formula f = parse(ga_formula, a);
      Formula g = to_galpha(canonicalize(f).canonical);
      if (format == "json")
        output.emit(json{{"input", to_string(f)}, {"galpha", to_string(g)}});
      else
        output.emit(to_string(g));
      return 0;
    }

    if (*mon) {
      Alphabet a = resolve_alphabet(alphabet_flag, {mon_formula});
      Formula f = parse(mon_formula, a);
      if (is_pure_past(f)) {
        PastMonitor m = compile_past(a, f);
        if (mon_dot)
          output.emit(m.to_dot());
        else if (format == "json")
          output.emit(json{{"formula", to_string(f)},
                           {"kind", "past"},
                           {"states", m.state_count()}});
        else
          output.emit("past monitor with " + std::to_string(m.state_count()) +
                      " states");
      } else {
        SafetyMonitor m = monitor_for(a, f, max_states);
        std::size_t rejects = 0;
        for (char r : m.reject) rejects += (r != 0);
        if (mon_dot)
          output.emit(m.to_dot());
        else if (format == "json")
          output.emit(json{{"formula", to_string(f)},
                           {"kind", "safety"},
                           {"states", m.state_count()},
                           {"reject_states", rejects}});
        else
          output.emit("safety monitor with " + std::to_string(m.state_count()) +
                      " states (" + std::to_string(rejects) + " rejecting)");
      }
      return 0;
    }

    if (*eq || *co) {
      std::string f1s = *eq ? eq_f1 : co_f1;
      std::string f2s = *eq ? eq_f2 : co_f2;
      Alphabet a = resolve_alphabet(alphabet_flag, {f1s, f2s});
      Formula f1 = parse(f1s, a);
      Formula f2 = parse(f2s, a);
      SafetyMonitor m1 = monitor_for(a, f1, max_states);
      SafetyMonitor m2 = monitor_for(a, f2, max_states);
      bool yes;
      std::optional<Counterexample> cex;
      if (*eq) {
        EquivResult r = equivalent(m1, m2);
        yes = r.equivalent;
        cex = r.cex;
      } else {
        ContainsResult r = contains(m1, m2);
        yes = r.contained;
        cex = r.cex;
      }
      const char* verdict_key = *eq ? "equivalent" : "contained";
      if (yes) {
        if (format == "json")
          output.emit(json{{verdict_key, true}});
        else
          output.emit(std::string(*eq ? "equivalent" : "contained"));
        return 0;
      }
      if (format == "json") {
        output.emit(json{{verdict_key, false}, {"counterexample", cex_json(*cex)}});
      } else {
        // the counterexample itself is always emitted as JSON
        std::string side =
            cex->holds_in == Counterexample::Side::Left ? "left" : "right";
        output.emit(std::string(*eq ? "not equivalent" : "not contained") +
                    "; witness " + to_string(cex->word) + " holds in the " + side +
                    " formula only\n" + cex_json(*cex).dump(2));
      }
      return 1;
    }

    if (*sg) {
      SigmaWord w = make_sigma(sg_i, sg_k, sg_j);
      bool member = check_membership(w);
      if (format == "json")
        output.emit(json{{"i", sg_i},
                         {"k", sg_k},
                         {"j", sg_j},
                         {"word", word_json(w.realized)},
                         {"in_phi_g", member}});
      else
        output.emit(to_string(w.realized) + (member ? "  (model of G (p1 | G p2))"
                                                    : "  (not a model of G (p1 | G p2))"));
      return member ? 0 : 1;
    }

    if (*sep) {
      Alphabet a = sigma_alphabet();
      // membership sweep
      std::size_t membership_checked = 0, membership_mismatches = 0;
      for (std::size_t i = 0; i <= 6; ++i)
        for (std::size_t k = 0; k <= 6; ++k)
          for (std::size_t j = 0; j <= 6; ++j) {
            if (i == j || k == j) continue;
            ++membership_checked;
            SigmaWord w = make_sigma(i, k, j);
            if (eval(w.realized, phi_g()) != (i < j && k < j)) ++membership_mismatches;
          }
      // interval correspondence sweep
      std::size_t window_checked = 0, window_failures = 0;
      for (std::size_t d = 0; d <= 3; ++d)
        for (std::size_t i = d; i <= 6; ++i)
          for (std::size_t j = i + d; j <= i + d + 2; ++j)
            for (std::size_t k = j + d; k <= j + d + 2; ++k) {
              if (i == j || k == j) continue;
              ++window_checked;
              if (!check_interval_correspondence(d, i, j, k).ok()) ++window_failures;
            }
      // indistinguishability experiment
      auto enumerated = enumerate_canonical(sep_max_next, sep_max_d, a, 2,
                                            std::max<std::size_t>(sep_samples, 1));
      auto sampled = sample_canonical(sep_samples, sep_seed, sep_max_next, sep_max_d, a);
      std::vector<CanonicalFormula> corpus;
      corpus.reserve(enumerated.size() + sampled.size());
      for (auto& c : enumerated) corpus.push_back(std::move(c));
      for (auto& c : sampled) corpus.push_back(std::move(c));
      SeparationReport rep = run_indistinguishability(
          corpus, sep_strict ? MarginRule::strict_grid() : MarginRule::default_grid());
      rep.source = "enumerated+sampled";
      rep.seed = sep_seed;
      rep.max_next = sep_max_next;
      rep.max_d = sep_max_d;
      if (sep_markdown)
        output.emit(separation_markdown(rep, membership_checked, membership_mismatches,
                                        window_checked, window_failures));
      else
        output.emit(separation_json(rep, membership_checked, membership_mismatches,
                                    window_checked, window_failures));
      bool clean = membership_mismatches == 0 && window_failures == 0 &&
                   rep.total_disagreements == 0 && rep.phi_g_witness_ok;
      return clean ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
