#include <sstream>

#include "nkaq/proof/checker.hpp"

namespace nkaq::proof {

std::size_t MutationReport::killed() const {
  std::size_t n = 0;
  for (const auto& m : mutants) n += m.killed ? 1 : 0;
  return n;
}

MutationReport mutation_test(const std::string& text, const RuleDB& db,
                             const std::string& source) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  const ProofScript original = parse_script(text, source);
  MutationReport rep;
  for (int target : mutable_lines(original)) {
    std::string mutated;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (static_cast<int>(i) + 1 != target) mutated += lines[i] + '\n';
    }
    Mutant m{target, lines[static_cast<std::size_t>(target) - 1], false, ""};
    const CheckReport r = check_script_text(mutated, db, source);
    m.killed = !r.accepted;
    if (r.failure) m.reason = std::string(to_string(r.failure->kind)) + ": " + r.failure->message;
    rep.mutants.push_back(std::move(m));
  }
  return rep;
}

}  // namespace nkaq::proof
