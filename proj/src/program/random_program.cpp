#include "nkaq/program/random_program.hpp"

#include <algorithm>

namespace nkaq::program {

namespace {

class Generator {
 public:
  Generator(ProgramContext& ctx, quantum::Rng& rng, const RandomProgramOptions& o)
      : ctx_(ctx), rng_(rng), o_(o) {
    for (const auto& r : ctx.layout.registers()) names_.push_back(r.name);
  }

  Program gen(int depth) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (depth == 0 || u(rng_) < 0.25) return leaf();
    switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
      case 0: {
        Program first = gen(depth - 1);  // sequenced so a seed fixes the program
        return Program::seq(std::move(first), gen(depth - 1));
      }
      case 1: {
        auto rs = pick_regs();
        const std::string m = fresh_measurement(rs);
        std::map<int, Program> br;
        for (int i : ctx_.measurements.at(m).outcomes()) br.emplace(i, gen(depth - 1));
        return Program::case_(m, rs, std::move(br));
      }
      default: {
        auto rs = pick_regs();
        const std::string m = fresh_measurement(rs);
        return Program::while_(m, rs, gen(depth - 1));
      }
    }
  }

 private:
  Program leaf() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng_);
    if (x < o_.abort_weight) return Program::abort();
    if (x < o_.abort_weight + o_.skip_weight) return Program::skip();
    if (x < o_.abort_weight + o_.skip_weight + o_.init_weight) {
      const auto& r = names_[std::uniform_int_distribution<std::size_t>(0, names_.size() - 1)(rng_)];
      const int v = std::uniform_int_distribution<int>(0, ctx_.layout.dim_of(r) - 1)(rng_);
      return Program::init(r, v);
    }
    auto rs = pick_regs();
    const std::string name = "U" + std::to_string(ctx_.unitaries.size());
    ctx_.unitaries[name] = quantum::random_unitary(ctx_.layout.dim_of(rs), rng_);
    return Program::unitary(name, rs);
  }

  std::vector<std::string> pick_regs() {
    const int most = std::min<int>(o_.max_arity, static_cast<int>(names_.size()));
    const int k = std::uniform_int_distribution<int>(1, most)(rng_);
    auto shuffled = names_;
    std::shuffle(shuffled.begin(), shuffled.end(), rng_);
    shuffled.resize(k);
    return shuffled;
  }

  std::string fresh_measurement(const std::vector<std::string>& rs) {
    const std::string name = "M" + std::to_string(ctx_.measurements.size());
    ctx_.measurements.emplace(name, quantum::random_projective_measurement(ctx_.layout.dim_of(rs), 2, rng_));
    return name;
  }

  ProgramContext& ctx_;
  quantum::Rng& rng_;
  const RandomProgramOptions& o_;
  std::vector<std::string> names_;
};

}  // namespace

Program random_program_in(ProgramContext& ctx, quantum::Rng& rng, const RandomProgramOptions& opts) {
  Generator g(ctx, rng, opts);
  return g.gen(opts.depth);
}

RandomProgram random_program(quantum::Rng& rng, const RandomProgramOptions& opts) {
  RandomProgram out;
  std::vector<Register> regs;
  for (int i = 0; i < opts.qubits; ++i) regs.push_back({"q" + std::to_string(i), 2});
  out.ctx.layout = VariableLayout(std::move(regs));
  out.program = random_program_in(out.ctx, rng, opts);
  return out;
}

}  // namespace nkaq::program
