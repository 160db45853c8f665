// nkaq: command-line front end.
//   exit 0  success / equal / accepted / valid
//   exit 1  counterexample / rejected / invalid
//   exit 2  usage or input-format error

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nkaq/hoare/effects.hpp"
#include "nkaq/hoare/triple.hpp"
#include "nkaq/interp/interpret.hpp"
#include "nkaq/normal/normalize.hpp"
#include "nkaq/program/container.hpp"
#include "nkaq/program/encode.hpp"
#include "nkaq/proof/checker.hpp"
#include "nkaq/quantum/json_io.hpp"
#include "nkaq/quantum/transfer.hpp"
#include "nkaq/series/series.hpp"
#include "nkaq/suites/criteria.hpp"
#include "nkaq/syntax/parser.hpp"

namespace {

using namespace nkaq;
using quantum::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct RunConfig {
  double tol = 1e-9;
  std::size_t max_terms = std::size_t{1} << 20;
  int bounded = -1;  // -1: exact check where supported
  bool json = false;
  std::uint64_t seed = 42;

  quantum::StarPolicy policy() const {
    quantum::StarPolicy p;
    p.max_terms = max_terms;
    return p;
  }
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const Json& report, const std::string& text) {
  if (cfg.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

Json policy_json(const RunConfig& cfg) {
  return {{"tol", cfg.tol}, {"star_tol", cfg.policy().tol}, {"max_terms", cfg.max_terms}};
}

syntax::Expr expr_arg(const std::string& text) { return syntax::parse_expr(text, syntax::Alphabet::open()); }

int cmd_parse(const RunConfig& cfg, const std::string& text) {
  const auto e = expr_arg(text);
  Json atoms = Json::array();
  for (const auto& s : syntax::atoms_of(e)) atoms.push_back(s.name);
  const auto printed = syntax::print_expr(e);
  emit(cfg, {{"expr", printed}, {"size", e.size()}, {"atoms", atoms}, {"proper", series::is_proper(e)}},
       printed + "\n");
  return kOk;
}

int cmd_coeff(const RunConfig& cfg, const std::string& text, const std::string& word_text) {
  const auto e = expr_arg(text);
  std::vector<std::string> alphabet;
  for (const auto& s : syntax::atoms_of(e)) alphabet.push_back(s.name);
  const auto w = series::parse_word(word_text, alphabet);
  const auto c = series::coeff(e, w);
  emit(cfg, {{"expr", syntax::print_expr(e)}, {"word", series::word_to_string(w)}, {"coeff", c.str()}},
       c.str() + "\n");
  return kOk;
}

int cmd_equiv(const RunConfig& cfg, const std::string& lhs, const std::string& rhs, bool leq) {
  const auto e = expr_arg(lhs);
  const auto f = expr_arg(rhs);
  Json report{{"lhs", syntax::print_expr(e)}, {"rhs", syntax::print_expr(f)}, {"relation", leq ? "<=" : "="}};
  if (cfg.bounded < 0 && !leq) {
    const auto r = series::exact_equiv(e, f);
    if (r.verdict != series::ExactResult::Verdict::unsupported) {
      const bool eq = r.verdict == series::ExactResult::Verdict::equal;
      report["mode"] = "exact";
      report["equal"] = eq;
      std::string text = eq ? "Equal\n" : "Distinguished\n";
      if (!eq) {
        const auto w = series::word_to_string(r.witness);
        report["counterexample"] = {{"word", w},
                                    {"lhs", series::coeff(e, r.witness).str()},
                                    {"rhs", series::coeff(f, r.witness).str()}};
        text = "Distinguished by word '" + w + "' (" + series::coeff(e, r.witness).str() + " vs " +
               series::coeff(f, r.witness).str() + ")\n";
      }
      emit(cfg, report, text);
      return eq ? kOk : kNegative;
    }
    report["exact"] = "unsupported";
  }
  const int L = cfg.bounded < 0 ? 6 : cfg.bounded;
  const auto r = leq ? series::bounded_leq(e, f, L) : series::bounded_equiv(e, f, L);
  report["mode"] = "bounded";
  report["length"] = L;
  report["equal"] = r.equal;
  std::string text;
  if (r.equal) {
    text = std::string(leq ? "Below" : "Equal") + " up to length " + std::to_string(L) + "\n";
  } else {
    const auto& c = *r.counterexample;
    const auto w = series::word_to_string(c.word);
    report["counterexample"] = {{"word", w}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}};
    text = "Counterexample: word '" + w + "' has coefficient " + c.lhs.str() + " vs " + c.rhs.str() + "\n";
  }
  emit(cfg, report, text);
  return r.equal ? kOk : kNegative;
}

int cmd_interp(const RunConfig& cfg, const std::string& text, const std::string& setting_path) {
  const auto s = interp::setting_from_json(quantum::load_json_file(setting_path));
  const auto e = syntax::parse_expr(text, syntax::Alphabet::open());
  const auto r = interp::interpret(e, s, cfg.policy());
  Json report{{"expr", syntax::print_expr(e)}, {"dim", s.dim}, {"converged", r.converged},
              {"terms", r.terms},             {"policy", policy_json(cfg)}};
  std::string out = "converged: " + std::string(r.converged ? "yes" : "no") + " (" + std::to_string(r.terms) +
                    " terms)\n";
  if (r.converged) {
    const auto e_op = r.superop();
    report["superoperator"] = quantum::superop_to_json(e_op);
    const auto v = quantum::validate_superop(e_op, cfg.tol);
    report["trace_non_increasing"] = v.trace_non_increasing;
    out += "Kraus operators: " + std::to_string(e_op.kraus().size()) +
           ", trace non-increasing: " + (v.trace_non_increasing ? "yes" : "no") + "\n";
  }
  emit(cfg, report, out);
  return r.converged ? kOk : kNegative;
}

int cmd_encode(const RunConfig& cfg, const std::string& path) {
  const auto c = program::load_program_file(path);
  const auto enc = program::EncoderSetting::automatic(c.program, c.ctx, c.symbols);
  const auto e = program::encode(c.program, enc);
  Json symbols = Json::object();
  std::string out = syntax::print_expr(e) + "\n";
  for (const auto& [key, sym] : enc.entries()) {
    symbols[sym] = key;
    out += "  " + sym + " = " + key + "\n";
  }
  emit(cfg, {{"program", program::print_program(c.program)}, {"encoding", syntax::print_expr(e)}, {"symbols", symbols}},
       out);
  return kOk;
}

int cmd_run(const RunConfig& cfg, const std::string& path) {
  const auto j = quantum::load_json_file(path);
  const auto c = program::container_from_json(j);
  const auto d = program::denote_transfer(c.program, c.ctx, cfg.policy());
  Json report{{"program", program::print_program(c.program)},
              {"dim", c.ctx.layout.total_dim()},
              {"converged", d.converged},
              {"loop_terms", d.loop_terms},
              {"policy", policy_json(cfg)}};
  std::string out = "converged: " + std::string(d.converged ? "yes" : "no") + " (" + std::to_string(d.loop_terms) +
                    " loop terms)\n";
  if (!d.converged) {
    emit(cfg, report, out);
    return kNegative;
  }
  const int dim = c.ctx.layout.total_dim();
  const auto e = quantum::superop_of_transfer(d.transfer, dim, dim);
  report["superoperator"] = quantum::superop_to_json(e);
  if (j.contains("input")) {
    const auto rho = quantum::matrix_from_json(j.at("input"));
    const auto out_state = e.apply(rho);
    report["output"] = quantum::matrix_to_json(out_state);
    report["output_trace"] = out_state.trace().real();
    out += "output trace: " + std::to_string(out_state.trace().real()) + "\n";
  }
  out += "Kraus operators: " + std::to_string(e.kraus().size()) + "\n";
  emit(cfg, report, out);
  return kOk;
}

int cmd_check_proof(const RunConfig& cfg, const std::string& path, bool mutate) {
  const auto text = read_file(path);
  const auto db = proof::builtin_rules();
  const auto rep = proof::check_script_text(text, db, path);
  Json report{{"script", path}, {"accepted", rep.accepted}, {"lemmas", rep.lemmas}, {"steps", rep.steps}};
  std::string out;
  if (rep.accepted) {
    out = "ACCEPTED: " + std::to_string(rep.lemmas) + " lemmas, " + std::to_string(rep.steps) + " steps\n";
  } else {
    const auto& f = *rep.failure;
    report["failure"] = {{"kind", proof::to_string(f.kind)}, {"lemma", f.lemma}, {"line", f.line}, {"message", f.message}};
    out = "REJECTED: " + std::string(proof::to_string(f.kind)) + " at line " + std::to_string(f.line) +
          (f.lemma.empty() ? "" : " in lemma " + f.lemma) + ": " + f.message + "\n";
    if (f.kind == proof::FailureKind::parse_error) {
      emit(cfg, report, out);
      return kUsage;
    }
  }
  bool killed_all = true;
  if (mutate && rep.accepted) {
    const auto m = proof::mutation_test(text, db, path);
    killed_all = m.all_killed();
    Json survivors = Json::array();
    for (const auto& mu : m.mutants) {
      if (!mu.killed) survivors.push_back({{"line", mu.line}, {"deleted", mu.deleted}});
    }
    report["mutation"] = {{"mutants", m.mutants.size()}, {"killed", m.killed()}, {"survivors", survivors}};
    out += "mutants killed: " + std::to_string(m.killed()) + "/" + std::to_string(m.mutants.size()) + "\n";
  }
  emit(cfg, report, out);
  return rep.accepted && killed_all ? kOk : kNegative;
}

int cmd_normalize(const RunConfig& cfg, const std::string& path) {
  const auto c = program::load_program_file(path);
  const auto nf = normal::normalize_program(c.program, c.ctx);
  const auto chk = normal::verify_normal_form(c.program, nf, std::max(cfg.tol, 1e-8), cfg.policy());
  const bool hygiene = normal::guard_hygiene(nf, cfg.tol);
  Json guards = Json::array();
  for (const auto& g : nf.guards) guards.push_back({{"name", g.name}, {"dim", g.dim}});
  const auto printed = program::print_program(nf.composed());
  emit(cfg,
       {{"normal_form", printed},
        {"guards", guards},
        {"dim", nf.context.layout.total_dim()},
        {"shape_ok", chk.shape_ok},
        {"verified", chk.ok},
        {"distance", chk.distance},
        {"loop_terms", chk.loop_terms},
        {"guard_hygiene", hygiene},
        {"policy", policy_json(cfg)}},
       printed + "\nverified: " + (chk.ok ? "yes" : "no") + " (distance " + std::to_string(chk.distance) +
           ", dim " + std::to_string(nf.context.layout.total_dim()) + ")\n");
  return chk.ok && hygiene ? kOk : kNegative;
}

int cmd_hoare(const RunConfig& cfg, const std::string& path) {
  const auto tf = hoare::load_triple_file(path);
  quantum::Rng rng(cfg.seed);
  const auto r = hoare::hoare_valid(tf.triple, tf.ctx, cfg.tol, rng, 50, cfg.policy());
  Json report{{"verdict", hoare::to_string(r.verdict)},
              {"valid", r.valid},
              {"margin", r.margin},
              {"worst_trace", r.worst_trace},
              {"samples_agree", r.samples_agree},
              {"loop_terms", r.loop_terms},
              {"policy", policy_json(cfg)}};
  std::string out = std::string(hoare::to_string(r.verdict)) + " (margin " + std::to_string(r.margin) + ")\n";
  bool partitions_ok = true;
  Json parts = Json::array();
  for (const auto& p : tf.partitions) {
    const auto it = tf.ctx.measurements.find(p.measurement);
    if (it == tf.ctx.measurements.end()) throw FormatError("partition " + p.name + " names unknown measurement " + p.measurement);
    const auto& m = it->second;
    const auto pr = hoare::check_partition(m, cfg.tol, rng);
    partitions_ok = partitions_ok && pr.ok();
    parts.push_back({{"name", p.name}, {"complete", pr.complete}, {"gram_error", pr.gram_error}, {"ok", pr.ok()}});
    out += "partition " + p.name + ": " + (pr.ok() ? "valid" : "invalid") + "\n";
  }
  report["partitions"] = parts;
  emit(cfg, report, out);
  return r.valid && partitions_ok ? kOk : kNegative;
}

int cmd_selftest(const RunConfig& cfg) {
  suites::SuiteConfig sc;
  sc.seed = cfg.seed;
  bool all = true;
  Json results = Json::array();
  for (const auto& run : suites::all_criteria()) {
    const auto r = run(sc);
    all = all && r.passed;
    results.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                       {"seconds", r.seconds}});
    if (!cfg.json) {
      std::printf("[%s] %2d %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str());
      std::fflush(stdout);
    }
  }
  if (cfg.json) std::cout << Json{{"seed", cfg.seed}, {"passed", all}, {"criteria", results}}.dump(2) << "\n";
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-idempotent Kleene algebra toolkit for quantum programs"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand name.
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-terms", cfg.max_terms, "largest star partial sum")->check(CLI::PositiveNumber);
  app.add_option("--bounded", cfg.bounded, "compare series up to this word length")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", cfg.json, "machine-readable report");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  std::string a;
  std::string b;
  bool leq = false;
  bool mutate = false;
  int code = kOk;

  auto* parse = app.add_subcommand("parse", "parse and print an expression");
  parse->add_option("expr", a)->required();
  parse->callback([&] { code = cmd_parse(cfg, a); });

  auto* coeff = app.add_subcommand("coeff", "coefficient of a word");
  coeff->add_option("expr", a)->required();
  coeff->add_option("word", b, "letters separated by spaces, or eps")->required();
  coeff->callback([&] { code = cmd_coeff(cfg, a, b); });

  auto* equiv = app.add_subcommand("equiv", "compare two expressions as series");
  equiv->add_option("lhs", a)->required();
  equiv->add_option("rhs", b)->required();
  equiv->add_flag("--leq", leq, "check lhs <= rhs instead of equality");
  equiv->callback([&] { code = cmd_equiv(cfg, a, b, leq); });

  auto* interp_cmd = app.add_subcommand("interp", "interpret an expression in a quantum setting");
  interp_cmd->add_option("expr", a)->required();
  interp_cmd->add_option("setting", b, "setting JSON")->required()->check(CLI::ExistingFile);
  interp_cmd->callback([&] { code = cmd_interp(cfg, a, b); });

  auto* encode = app.add_subcommand("encode", "encode a program as an expression");
  encode->add_option("program", a, "program JSON")->required()->check(CLI::ExistingFile);
  encode->callback([&] { code = cmd_encode(cfg, a); });

  auto* run = app.add_subcommand("run", "denotational semantics of a program");
  run->add_option("program", a, "program JSON")->required()->check(CLI::ExistingFile);
  run->callback([&] { code = cmd_run(cfg, a); });

  auto* check = app.add_subcommand("check-proof", "check a proof script");
  check->add_option("script", a)->required()->check(CLI::ExistingFile);
  check->add_flag("--mutate", mutate, "also delete each step and hypothesis and expect rejection");
  check->callback([&] { code = cmd_check_proof(cfg, a, mutate); });

  auto* normalize = app.add_subcommand("normalize", "single-loop normal form of a program");
  normalize->add_option("program", a, "program JSON")->required()->check(CLI::ExistingFile);
  normalize->callback([&] { code = cmd_normalize(cfg, a); });

  auto* hoare_cmd = app.add_subcommand("hoare", "validity of a partial-correctness triple");
  hoare_cmd->add_option("triple", a, "triple JSON")->required()->check(CLI::ExistingFile);
  hoare_cmd->callback([&] { code = cmd_hoare(cfg, a); });

  auto* selftest = app.add_subcommand("selftest", "bundled corpus and randomized suites");
  selftest->callback([&] { code = cmd_selftest(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const syntax::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const proof::ScriptError& e) {
    std::cerr << "script error: " << e.what() << "\n";
    return kUsage;
  } catch (const quantum::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const program::ProgramError& e) {
    std::cerr << "program error: " << e.what() << "\n";
    return kUsage;
  } catch (const program::NonConvergent& e) {
    std::cerr << "not convergent: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
