#pragma once

// Register machine with clean space plus catalytic auxiliary memory.
//
// Machine registers: index 0 is a constant-unit register living in the clean
// region (the instruction set has no immediate operand, so programs scale
// leaf contributions by this register; it is never a legal destination).
// Indices 1..R are auxiliary ring registers with arbitrary initial contents.
//
// Every instruction adds or subtracts a quantity independent of its
// destination, so each is invertible and a program followed by its reversal
// restores the auxiliary memory bit-exactly. Rings are Z mod 2^w for
// 1 <= w <= 64; w = 1 is GF(2).

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "catalab/bits.hpp"
#include "catalab/encoding.hpp"
#include "catalab/errors.hpp"
#include "catalab/meter.hpp"

namespace catalab {

inline constexpr std::uint32_t kUnitReg = 0;

inline std::uint64_t ring_mask(std::uint32_t width) {
  if (width == 0 || width > 64) throw vm_error("ring width must be in 1..64");
  return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

enum class Op : std::uint8_t { Add, Sub, MAdd, MSub, XAdd, XSub };

struct Instr {
  Op op;
  std::uint32_t i = 0;  // destination register
  std::uint32_t j = 0;  // source register
  std::uint32_t k = 0;  // second source register (MAdd/MSub)
  std::uint32_t v = 0;  // input index (XAdd/XSub)

  bool operator==(const Instr&) const = default;
};

struct RegisterProgram {
  std::vector<Instr> instrs;
  std::uint32_t reg_count = 1;    // highest register index + 1 (incl. unit)
  std::uint32_t input_count = 0;  // number of declared inputs
  std::uint32_t output_reg = 1;

  std::size_t length() const { return instrs.size(); }
};

inline void validate(const RegisterProgram& p) {
  for (const auto& ins : p.instrs) {
    if (ins.i == kUnitReg) throw vm_error("unit register is read-only");
    if (ins.i >= p.reg_count || ins.j >= p.reg_count)
      throw vm_error("register index out of range");
    const bool uses_k = ins.op == Op::MAdd || ins.op == Op::MSub;
    if (uses_k && ins.k >= p.reg_count)
      throw vm_error("register index out of range");
    if (ins.i == ins.j || (uses_k && ins.i == ins.k))
      throw vm_error("destination must differ from sources");
    const bool uses_v = ins.op == Op::XAdd || ins.op == Op::XSub;
    if (uses_v && ins.v >= p.input_count)
      throw vm_error("input index out of range");
  }
}

/// Reversal: reversed instruction order with every op sign-flipped.
inline RegisterProgram invert(const RegisterProgram& p) {
  RegisterProgram q = p;
  q.instrs.assign(p.instrs.rbegin(), p.instrs.rend());
  for (auto& ins : q.instrs) {
    switch (ins.op) {
      case Op::Add: ins.op = Op::Sub; break;
      case Op::Sub: ins.op = Op::Add; break;
      case Op::MAdd: ins.op = Op::MSub; break;
      case Op::MSub: ins.op = Op::MAdd; break;
      case Op::XAdd: ins.op = Op::XSub; break;
      case Op::XSub: ins.op = Op::XAdd; break;
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// formulas

/// Formula tree over declared inputs with binary add/multiply gates.
/// Constant leaves are restricted to the ring's 0 and 1.
class Formula {
 public:
  enum class NodeKind : std::uint8_t { var, zero, one, add, mul };

  struct Node {
    NodeKind kind;
    std::uint32_t a = 0, b = 0;  // children for gates
    std::uint32_t var = 0;       // input index for leaves
  };

  static Formula variable(std::uint32_t v) {
    Formula f;
    f.nodes_.push_back(Node{NodeKind::var, 0, 0, v});
    f.input_count_ = v + 1;
    return f;
  }

  static Formula zero() {
    Formula f;
    f.nodes_.push_back(Node{NodeKind::zero, 0, 0, 0});
    return f;
  }

  static Formula one() {
    Formula f;
    f.nodes_.push_back(Node{NodeKind::one, 0, 0, 0});
    return f;
  }

  static Formula gate(NodeKind kind, const Formula& lhs, const Formula& rhs) {
    Formula f;
    f.nodes_ = lhs.nodes_;
    const std::uint32_t shift = std::uint32_t(f.nodes_.size());
    for (Node n : rhs.nodes_) {
      if (n.kind == NodeKind::add || n.kind == NodeKind::mul) {
        n.a += shift;
        n.b += shift;
      }
      f.nodes_.push_back(n);
    }
    f.nodes_.push_back(
        Node{kind, std::uint32_t(lhs.root()), shift + std::uint32_t(rhs.root()), 0});
    f.input_count_ = std::max(lhs.input_count_, rhs.input_count_);
    return f;
  }

  static Formula add(const Formula& a, const Formula& b) {
    return gate(NodeKind::add, a, b);
  }
  static Formula mul(const Formula& a, const Formula& b) {
    return gate(NodeKind::mul, a, b);
  }

  std::size_t root() const { return nodes_.size() - 1; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::uint32_t input_count() const { return input_count_; }

  std::size_t depth() const { return depth_of(root()); }

  std::size_t leaf_count() const {
    std::size_t c = 0;
    for (const auto& n : nodes_)
      if (n.kind == NodeKind::var || n.kind == NodeKind::zero ||
          n.kind == NodeKind::one)
        ++c;
    return c;
  }

  /// Direct tree-walk evaluation in the ring; the reference the compiled
  /// program is checked against.
  std::uint64_t eval(std::span<const std::uint64_t> inputs,
                     std::uint32_t width) const {
    const std::uint64_t mask = ring_mask(width);
    if (inputs.size() < input_count_) throw vm_error("eval: missing inputs");
    return eval_at(root(), inputs, mask);
  }

 private:
  std::size_t depth_of(std::size_t idx) const {
    const Node& n = nodes_[idx];
    if (n.kind == NodeKind::add || n.kind == NodeKind::mul)
      return 1 + std::max(depth_of(n.a), depth_of(n.b));
    return 0;
  }

  std::uint64_t eval_at(std::size_t idx, std::span<const std::uint64_t> inputs,
                        std::uint64_t mask) const {
    const Node& n = nodes_[idx];
    switch (n.kind) {
      case NodeKind::var: return inputs[n.var] & mask;
      case NodeKind::zero: return 0;
      case NodeKind::one: return 1 & mask;
      case NodeKind::add:
        return (eval_at(n.a, inputs, mask) + eval_at(n.b, inputs, mask)) & mask;
      case NodeKind::mul:
        return (eval_at(n.a, inputs, mask) * eval_at(n.b, inputs, mask)) & mask;
    }
    throw vm_error("eval: bad node");
  }

  std::vector<Node> nodes_;
  std::uint32_t input_count_ = 0;
};

// ---------------------------------------------------------------------------
// compilation

namespace detail {

/// Emits a program fragment whose net effect is r_target += sign * f * r_scale
/// with every other register restored. Multiplication borrows the auxiliary
/// register outside {target, scale}; sub-fragments transiently perturb and
/// then restore it, so three auxiliary registers cover any formula shape.
inline void emit(const Formula& f, std::size_t idx, std::uint32_t target,
                 std::uint32_t scale, bool negative,
                 std::vector<Instr>& out) {
  const auto& n = f.nodes()[idx];
  switch (n.kind) {
    case Formula::NodeKind::zero:
      return;
    case Formula::NodeKind::one:
      out.push_back(Instr{negative ? Op::Sub : Op::Add, target, scale, 0, 0});
      return;
    case Formula::NodeKind::var:
      out.push_back(
          Instr{negative ? Op::XSub : Op::XAdd, target, scale, 0, n.var});
      return;
    case Formula::NodeKind::add:
      emit(f, n.a, target, scale, negative, out);
      emit(f, n.b, target, scale, negative, out);
      return;
    case Formula::NodeKind::mul: {
      std::uint32_t helper = 1;
      while (helper == target || helper == scale) ++helper;
      emit(f, n.a, helper, scale, false, out);
      emit(f, n.b, target, helper, negative, out);
      emit(f, n.a, helper, scale, true, out);
      emit(f, n.b, target, helper, !negative, out);
      return;
    }
  }
}

}  // namespace detail

/// Transparent evaluation program: running it from any auxiliary state tau
/// leaves every register unchanged except the output register, which gains
/// exactly f(x). Program length is at most 4^depth times the leaf constant.
inline RegisterProgram compile_formula(const Formula& f) {
  RegisterProgram p;
  p.input_count = f.input_count();
  p.output_reg = 1;
  detail::emit(f, f.root(), p.output_reg, kUnitReg, false, p.instrs);
  std::uint32_t max_reg = p.output_reg;
  for (const auto& ins : p.instrs) {
    max_reg = std::max(max_reg, ins.i);
    max_reg = std::max(max_reg, ins.j);
    if (ins.op == Op::MAdd || ins.op == Op::MSub)
      max_reg = std::max(max_reg, ins.k);
  }
  p.reg_count = max_reg + 1;
  validate(p);
  return p;
}

// ---------------------------------------------------------------------------
// machine state and execution

/// Auxiliary memory snapshot: ring width plus the aux register contents
/// (machine register index = position + 1; the unit register is not part of
/// the catalytic state).
struct MachineState {
  std::uint32_t width = 1;
  std::vector<std::uint64_t> aux;

  bool operator==(const MachineState&) const = default;

  BitVec to_bits() const {
    BitVec v(aux.size() * width);
    for (std::size_t r = 0; r < aux.size(); ++r)
      for (std::uint32_t b = 0; b < width; ++b)
        if ((aux[r] >> b) & 1u) v.set(r * width + b, true);
    return v;
  }
};

struct RunResult {
  MachineState final_state;
  std::uint64_t output_delta = 0;  // f(x) when the program came from compile
  std::uint64_t steps = 0;
  std::uint32_t clean_scratch_bits = 0;  // program counter width, reported only
};

/// Executes the program. Auxiliary updates are invertible, so nothing is
/// charged to the execution meter; only step and clean-space accounting is
/// reported.
inline RunResult run(const RegisterProgram& p,
                     std::span<const std::uint64_t> inputs,
                     const MachineState& aux_init, CostMeter& meter) {
  validate(p);
  if (inputs.size() != p.input_count)
    throw vm_error("run: input arity mismatch");
  if (aux_init.aux.size() + 1 < p.reg_count)
    throw vm_error("run: too few auxiliary registers");
  const std::uint64_t mask = ring_mask(aux_init.width);

  std::vector<std::uint64_t> regs(aux_init.aux.size() + 1);
  regs[kUnitReg] = 1 & mask;
  for (std::size_t r = 0; r < aux_init.aux.size(); ++r)
    regs[r + 1] = aux_init.aux[r] & mask;
  const std::uint64_t out_before = regs[p.output_reg];

  for (const auto& ins : p.instrs) {
    std::uint64_t delta = 0;
    switch (ins.op) {
      case Op::Add: delta = regs[ins.j]; break;
      case Op::Sub: delta = ~regs[ins.j] + 1; break;
      case Op::MAdd: delta = regs[ins.j] * regs[ins.k]; break;
      case Op::MSub: delta = ~(regs[ins.j] * regs[ins.k]) + 1; break;
      case Op::XAdd: delta = inputs[ins.v] * regs[ins.j]; break;
      case Op::XSub: delta = ~(inputs[ins.v] * regs[ins.j]) + 1; break;
    }
    regs[ins.i] = (regs[ins.i] + delta) & mask;
  }

  RunResult res;
  res.final_state.width = aux_init.width;
  res.final_state.aux.assign(regs.begin() + 1, regs.end());
  res.output_delta = (regs[p.output_reg] - out_before) & mask;
  res.steps = p.instrs.size();
  res.clean_scratch_bits =
      std::uint32_t(std::bit_width(std::uint64_t(p.instrs.size())));
  meter.cycles += 1;
  return res;
}

/// Full benchmark cycle: run the program, harvest f(x) from the output delta,
/// then run the reversal so the auxiliary memory is restored bit-exactly.
inline RunResult run_cycle(const RegisterProgram& p,
                           std::span<const std::uint64_t> inputs,
                           const MachineState& aux_init, CostMeter& meter) {
  const RunResult forward = run(p, inputs, aux_init, meter);
  const RegisterProgram rev = invert(p);
  const RunResult back = run(rev, inputs, forward.final_state, meter);
  RunResult res;
  res.final_state = back.final_state;
  res.output_delta = forward.output_delta;
  res.steps = forward.steps + back.steps;
  res.clean_scratch_bits = forward.clean_scratch_bits;
  meter.cycles -= 1;  // the two halves form one cycle
  return res;
}

/// Bits of reconfiguration between two auxiliary snapshots: zero when
/// bit-identical, otherwise the positional-patch codeword length.
inline std::uint64_t restoration_delta(const MachineState& before,
                                       const MachineState& after) {
  if (before.width != after.width || before.aux.size() != after.aux.size())
    throw vm_error("restoration_delta: shape mismatch");
  if (before == after) return 0;
  const auto est = khat_cond(Encodable{before.to_bits()},
                             Encodable{after.to_bits()});
  return est.bits;
}

// ---------------------------------------------------------------------------
// text formats

inline std::string format_program(const RegisterProgram& p) {
  std::ostringstream os;
  for (const auto& ins : p.instrs) {
    switch (ins.op) {
      case Op::Add: os << "ADD " << ins.i << ' ' << ins.j; break;
      case Op::Sub: os << "SUB " << ins.i << ' ' << ins.j; break;
      case Op::MAdd:
        os << "MADD " << ins.i << ' ' << ins.j << ' ' << ins.k;
        break;
      case Op::MSub:
        os << "MSUB " << ins.i << ' ' << ins.j << ' ' << ins.k;
        break;
      case Op::XAdd:
        os << "XADD " << ins.i << ' ' << ins.v << ' ' << ins.j;
        break;
      case Op::XSub:
        os << "XSUB " << ins.i << ' ' << ins.v << ' ' << ins.j;
        break;
    }
    os << '\n';
  }
  return os.str();
}

inline RegisterProgram parse_program(std::string_view text) {
  RegisterProgram p;
  std::istringstream is{std::string(text)};
  std::string line;
  std::uint32_t max_reg = 0, max_input = 0;
  bool any_input = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string mnemonic;
    if (!(ls >> mnemonic)) continue;  // blank line
    Instr ins{};
    auto need = [&](std::uint32_t& slot) {
      long long v;
      if (!(ls >> v) || v < 0) throw vm_error("parse_program: bad operand");
      slot = std::uint32_t(v);
    };
    if (mnemonic == "ADD" || mnemonic == "SUB") {
      ins.op = mnemonic == "ADD" ? Op::Add : Op::Sub;
      need(ins.i);
      need(ins.j);
    } else if (mnemonic == "MADD" || mnemonic == "MSUB") {
      ins.op = mnemonic == "MADD" ? Op::MAdd : Op::MSub;
      need(ins.i);
      need(ins.j);
      need(ins.k);
      max_reg = std::max(max_reg, ins.k);
    } else if (mnemonic == "XADD" || mnemonic == "XSUB") {
      ins.op = mnemonic == "XADD" ? Op::XAdd : Op::XSub;
      need(ins.i);
      need(ins.v);
      need(ins.j);
      max_input = std::max(max_input, ins.v);
      any_input = true;
    } else {
      throw vm_error("parse_program: unknown mnemonic '" + mnemonic + "'");
    }
    std::string rest;
    if (ls >> rest) throw vm_error("parse_program: trailing tokens");
    max_reg = std::max({max_reg, ins.i, ins.j});
    p.instrs.push_back(ins);
  }
  p.reg_count = max_reg + 1;
  p.input_count = any_input ? max_input + 1 : 0;
  p.output_reg = p.reg_count > 1 ? 1 : 0;
  if (p.output_reg == 0) p.output_reg = 1, p.reg_count = std::max(p.reg_count, 2u);
  validate(p);
  return p;
}

/// Formula text: `(add F G)`, `(mul F G)`, `x<k>`, `0`, `1`.
inline Formula parse_formula(std::string_view text) {
  struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    }

    char peek() {
      skip();
      if (pos >= s.size()) throw vm_error("parse_formula: unexpected end");
      return s[pos];
    }

    std::string token() {
      skip();
      std::size_t start = pos;
      while (pos < s.size() &&
             !std::isspace(static_cast<unsigned char>(s[pos])) &&
             s[pos] != '(' && s[pos] != ')')
        ++pos;
      if (start == pos) throw vm_error("parse_formula: expected token");
      return std::string(s.substr(start, pos - start));
    }

    Formula expr() {
      if (peek() == '(') {
        ++pos;
        const std::string head = token();
        Formula a = expr();
        Formula b = expr();
        skip();
        if (pos >= s.size() || s[pos] != ')')
          throw vm_error("parse_formula: expected ')'");
        ++pos;
        if (head == "add") return Formula::add(a, b);
        if (head == "mul") return Formula::mul(a, b);
        throw vm_error("parse_formula: unknown gate '" + head + "'");
      }
      const std::string t = token();
      if (t == "0") return Formula::zero();
      if (t == "1") return Formula::one();
      if (t.size() >= 2 && t[0] == 'x') {
        std::uint32_t v = 0;
        for (std::size_t i = 1; i < t.size(); ++i) {
          if (t[i] < '0' || t[i] > '9')
            throw vm_error("parse_formula: bad variable '" + t + "'");
          v = v * 10 + std::uint32_t(t[i] - '0');
        }
        return Formula::variable(v);
      }
      throw vm_error("parse_formula: bad leaf '" + t + "'");
    }
  };
  Parser p{text};
  Formula f = p.expr();
  p.skip();
  if (p.pos != text.size()) throw vm_error("parse_formula: trailing input");
  return f;
}

/// Random formula of depth at most `depth` over `vars` inputs.
inline Formula random_formula(Rng& rng, std::uint32_t vars,
                              std::size_t depth) {
  if (depth == 0 || rng.bits(2) == 0) {  // leaf with probability 1/4
    const std::uint64_t pick = rng.index(vars + 2);
    if (pick == vars) return Formula::zero();
    if (pick == vars + 1) return Formula::one();
    return Formula::variable(std::uint32_t(pick));
  }
  Formula a = random_formula(rng, vars, depth - 1);
  Formula b = random_formula(rng, vars, depth - 1);
  return rng.coin() ? Formula::mul(a, b) : Formula::add(a, b);
}

/// Runs `cases` random (formula, input, aux) triples through compile +
/// run_cycle, checking restoration and transparency against tree-walk
/// evaluation. Returns the number of failing cases.
inline std::size_t fuzz_vm(std::size_t cases, std::size_t depth,
                           std::uint32_t vars, std::uint32_t width,
                           std::uint64_t seed, std::uint32_t aux_regs = 3) {
  Rng rng(mix_seed(seed, 0xf022));
  const std::uint64_t mask = ring_mask(width);
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const Formula f = random_formula(rng, vars, depth);
    const RegisterProgram p = compile_formula(f);
    std::vector<std::uint64_t> inputs(std::max(p.input_count, vars));
    for (auto& x : inputs) x = rng.word() & mask;
    MachineState aux;
    aux.width = width;
    aux.aux.resize(std::max<std::size_t>(aux_regs, p.reg_count));
    for (auto& r : aux.aux) r = rng.word() & mask;

    CostMeter meter;
    const std::uint64_t expect = f.eval(inputs, width);
    const RunResult fwd = run(p, std::span(inputs).first(p.input_count), aux,
                              meter);
    bool ok = fwd.output_delta == expect;
    for (std::size_t r = 0; ok && r < aux.aux.size(); ++r)
      if (r + 1 != p.output_reg && fwd.final_state.aux[r] != aux.aux[r])
        ok = false;
    if (ok &&
        ((aux.aux[p.output_reg - 1] + expect) & mask) !=
            fwd.final_state.aux[p.output_reg - 1])
      ok = false;
    const RunResult cyc =
        run_cycle(p, std::span(inputs).first(p.input_count), aux, meter);
    if (ok && (!(cyc.final_state == aux) || cyc.output_delta != expect))
      ok = false;
    if (ok && restoration_delta(aux, cyc.final_state) != 0) ok = false;
    if (ok && meter.exec_irrev_bits != 0) ok = false;
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace catalab
