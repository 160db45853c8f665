#include "nkaq/proof/script.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "nkaq/proof/matcher.hpp"

namespace nkaq::proof {

using syntax::Sort;

const char* to_string(StepRel r) {
  switch (r) {
    case StepRel::eq: return "=";
    case StepRel::leq: return "<=";
    case StepRel::geq: return ">=";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + " ") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

StepRel parse_rel(const std::string& r) {
  if (r == "=") return StepRel::eq;
  if (r == "<=" || r == "≤") return StepRel::leq;
  return StepRel::geq;
}

// Splits "at 1.2 with p=x, q=y using f, g" on its keywords.
std::map<std::string, std::string> keyword_clauses(const std::string& rest, int line) {
  static const std::regex kw(R"((^|\s)(at|with|using)\s)");
  std::map<std::string, std::string> out;
  std::vector<std::pair<std::string, std::size_t>> hits;  // keyword, start of its text
  std::vector<std::size_t> starts;
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), kw); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    hits.emplace_back(m[2].str(), static_cast<std::size_t>(m.position(0) + m.length(0)));
    starts.push_back(static_cast<std::size_t>(m.position(2)));
  }
  if (!hits.empty() && !trim(rest.substr(0, starts[0])).empty()) {
    throw ScriptError("unexpected text '" + trim(rest.substr(0, starts[0])) + "'", line);
  }
  if (hits.empty() && !trim(rest).empty()) {
    throw ScriptError("unexpected text '" + trim(rest) + "'", line);
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const std::size_t end = i + 1 < hits.size() ? starts[i + 1] : rest.size();
    const auto& key = hits[i].first;
    if (out.count(key)) throw ScriptError("repeated '" + key + "' clause", line);
    out[key] = trim(rest.substr(hits[i].second, end - hits[i].second));
  }
  return out;
}

class ScriptParser {
 public:
  ScriptParser(const std::string& text, std::string source) : text_(text) {
    script_.source = std::move(source);
    script_.alphabet.declare(kTopEffect, Sort::effect);
  }

  ProofScript run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string s = trim(raw);
      if (s.empty()) continue;
      handle(s);
    }
    finish_lemma();
    return std::move(script_);
  }

 private:
  void handle(const std::string& s) {
    static const std::regex header(R"(^(alphabet|effects|vars|effect-vars|uses)\s*:\s*(.*)$)");
    static const std::regex partition(R"(^partition\s+([\w'-]+)(\s+projective)?\s*:\s*(.*)$)");
    static const std::regex lemma(R"(^lemma\s+([\w'-]+)\s*:\s*(.+)$)");
    static const std::regex named(R"(^([\w'-]+)\s*:\s*(.+)$)");
    static const std::regex let(R"(^let\s+([A-Za-z][\w']*)\s*=\s*(.+)$)");
    std::smatch m;
    if (std::regex_match(s, m, let)) {
      finish_lemma();
      mode_ = Mode::top;
      const Expr body = parse_term(m[2].str());
      try {
        script_.alphabet.declare(m[1].str(), Sort::action);
      } catch (const std::invalid_argument& e) {
        throw ScriptError(e.what(), line_);
      }
      abbreviations_[m[1].str()] = body;
      return;
    }
    if (std::regex_match(s, m, header)) {
      finish_lemma();
      mode_ = Mode::top;
      declare(m[1].str(), split_names(m[2].str()));
      return;
    }
    if (std::regex_match(s, m, partition)) {
      finish_lemma();
      mode_ = Mode::top;
      Partition p{m[1].str(), split_names(m[3].str()), m[2].matched};
      if (p.symbols.empty()) throw ScriptError("partition without elements", line_);
      for (const auto& sym : p.symbols) {
        const auto* known = script_.alphabet.find(sym);
        if (!known || known->sort != Sort::action) {
          throw ScriptError("partition element '" + sym + "' is not a declared action", line_);
        }
      }
      script_.partitions.push_back(std::move(p));
      return;
    }
    if (s == "hypotheses:") {
      finish_lemma();
      mode_ = Mode::hypotheses;
      return;
    }
    if (std::regex_match(s, m, lemma)) {
      finish_lemma();
      mode_ = Mode::lemma;
      current_ = Lemma{m[1].str(), parse_ineq(m[2].str()), {Chain{}}, line_};
      return;
    }
    if (mode_ == Mode::hypotheses && std::regex_match(s, m, named)) {
      script_.hypotheses.push_back(Hypothesis{m[1].str(), parse_ineq(m[2].str()), line_});
      return;
    }
    if (mode_ == Mode::lemma) {
      if (s == "and") {
        current_->chains.push_back(Chain{});
        return;
      }
      current_->chains.back().lines.push_back(parse_chain_line(s));
      return;
    }
    throw ScriptError("unexpected line '" + s + "'", line_);
  }

  void declare(const std::string& what, const std::vector<std::string>& names) {
    try {
      if (what == "uses") {
        if (!script_.uses) script_.uses.emplace();
        script_.uses->insert(names.begin(), names.end());
        return;
      }
      for (const auto& n : names) {
        if (what == "alphabet") script_.alphabet.declare(n, Sort::action);
        if (what == "effects") script_.alphabet.declare(n, Sort::effect);
        if (what == "vars") script_.alphabet.declare_var(n, Sort::action);
        if (what == "effect-vars") script_.alphabet.declare_var(n, Sort::effect);
      }
    } catch (const std::invalid_argument& e) {
      throw ScriptError(e.what(), line_);
    }
  }

  Expr parse_term(const std::string& s) const {
    try {
      return syntax::substitute(syntax::parse_expr(s, script_.alphabet), abbreviations_);
    } catch (const std::exception& e) {
      throw ScriptError(std::string("cannot parse term '") + s + "': " + e.what(), line_);
    }
  }

  Inequation parse_ineq(const std::string& s) const {
    try {
      auto q = syntax::parse_inequation(s, script_.alphabet);
      q.lhs = syntax::substitute(q.lhs, abbreviations_);
      q.rhs = syntax::substitute(q.rhs, abbreviations_);
      return q;
    } catch (const std::exception& e) {
      throw ScriptError(std::string("cannot parse '") + s + "': " + e.what(), line_);
    }
  }

  ChainLine parse_chain_line(const std::string& s) const {
    static const std::regex step(R"(^(.*?)\s+(=|<=|>=|≤|≥)\s+by\s+([\w'-]+)\s+(LR|RL)(\s.*)?$)");
    std::smatch m;
    if (!std::regex_match(s, m, step)) {
      if (s.find(" by ") != std::string::npos) throw ScriptError("malformed step '" + s + "'", line_);
      return ChainLine{parse_term(s), std::nullopt, line_};
    }
    Step st;
    st.relation = parse_rel(m[2].str());
    st.rule = m[3].str();
    st.direction = m[4].str() == "LR" ? Direction::lr : Direction::rl;
    const auto clauses = keyword_clauses(m[5].matched ? m[5].str() : "", line_);
    if (auto it = clauses.find("at"); it != clauses.end()) {
      try {
        st.at = parse_path(it->second);
      } catch (const std::exception& e) {
        throw ScriptError(e.what(), line_);
      }
    }
    if (auto it = clauses.find("with"); it != clauses.end()) {
      std::istringstream in(it->second);
      std::string assignment;
      while (std::getline(in, assignment, ',')) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) throw ScriptError("malformed binding '" + assignment + "'", line_);
        st.with[trim(assignment.substr(0, eq))] = parse_term(trim(assignment.substr(eq + 1)));
      }
    }
    if (auto it = clauses.find("using"); it != clauses.end()) st.using_facts = split_names(it->second);
    return ChainLine{parse_term(trim(m[1].str())), std::move(st), line_};
  }

  void finish_lemma() {
    if (!current_) return;
    for (const auto& c : current_->chains) {
      if (c.lines.empty()) throw ScriptError("lemma '" + current_->name + "' has an empty chain", line_);
    }
    script_.lemmas.push_back(std::move(*current_));
    current_.reset();
  }

  enum class Mode { top, hypotheses, lemma };
  const std::string& text_;
  ProofScript script_;
  Mode mode_ = Mode::top;
  std::optional<Lemma> current_;
  Binding abbreviations_;  // "let" names, expanded as soon as a term is parsed
  int line_ = 0;
};

}  // namespace

ProofScript parse_script(const std::string& text, const std::string& source) {
  return ScriptParser(text, source).run();
}

ProofScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open proof script '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_script(buf.str(), path);
}

std::vector<int> mutable_lines(const ProofScript& s) {
  std::vector<int> out;
  for (const auto& h : s.hypotheses) out.push_back(h.line);
  for (const auto& l : s.lemmas) {
    for (const auto& c : l.chains) {
      for (const auto& ln : c.lines) out.push_back(ln.line);
    }
  }
  return out;
}

}  // namespace nkaq::proof
