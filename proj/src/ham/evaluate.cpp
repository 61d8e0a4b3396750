#include "qobjsim/ham/evaluate.hpp"

#include <cmath>
#include <complex>

namespace qobjsim::ham {

namespace {

using Complex = std::complex<double>;

constexpr double kHermitianTolerance = 1e-12;

/// One fully-distributed product term: scalar coefficient times an ordered
/// list of (operator, subsystem) applications, optionally bound to one
/// channel.
struct Monomial {
  Complex coeff{1.0, 0.0};
  std::vector<std::pair<OperatorKind, int>> ops;
  std::optional<model::Channel> channel;
  bool nonlinear_channel = false;
};

struct Expander {
  const std::map<std::string, double>& vars;
  const SubsystemLayout& layout;
  int n_qubits;
  std::map<std::string, int> bindings;  // SUM index variables in scope

  int resolve_index(const Index& idx, const char* what) const {
    if (std::holds_alternative<int>(idx)) return std::get<int>(idx);
    const std::string& name = std::get<std::string>(idx);
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw EvalError("UnboundIndex",
                      std::string(what) + " index '" + name + "' is not bound by a SUM");
    }
    return it->second;
  }

  int resolve_bound(const std::variant<int, std::string>& b) const {
    if (std::holds_alternative<int>(b)) return std::get<int>(b);
    const std::string& name = std::get<std::string>(b);
    auto bit = bindings.find(name);
    if (bit != bindings.end()) return bit->second;
    if (name == "N") {
      if (n_qubits < 0) {
        throw EvalError("UnboundVariable", "unbound bound N (no qubit count in context)");
      }
      return n_qubits - 1;
    }
    auto vit = vars.find(name);
    if (vit != vars.end()) return static_cast<int>(vit->second);
    throw EvalError("UnboundVariable", "unbound bound " + name);
  }

  int resolve_subsystem(const Expr::Operator& op) const {
    if (op.subsystem) {
      int k = resolve_index(*op.subsystem, "operator");
      if (k < 0 || static_cast<size_t>(k) >= layout.subsystems.size()) {
        throw EvalError("DimensionMismatch",
                        "operator subsystem " + std::to_string(k) + " outside layout of " +
                            std::to_string(layout.subsystems.size()) + " subsystems");
      }
      return k;
    }
    int osc = layout.unique_oscillator();
    if (osc < 0) {
      throw EvalError("DimensionMismatch",
                      std::string("bare operator ") + to_string(op.kind) +
                          " needs a unique oscillator subsystem");
    }
    return osc;
  }

  std::vector<Monomial> expand(const ExprPtr& e) {
    struct Visitor {
      Expander& ex;

      std::vector<Monomial> operator()(const Expr::Const& c) {
        Monomial m;
        m.coeff = c.value;
        return {m};
      }
      std::vector<Monomial> operator()(const Expr::Var& v) {
        std::string name = v.base;
        if (v.index) name += std::to_string(ex.resolve_index(*v.index, "variable"));
        auto it = ex.vars.find(name);
        if (it == ex.vars.end()) {
          throw EvalError("UnboundVariable", "variable '" + name + "' not in vars");
        }
        Monomial m;
        m.coeff = it->second;
        return {m};
      }
      std::vector<Monomial> operator()(const Expr::ChannelRef& c) {
        int idx = ex.resolve_index(c.index, "channel");
        model::Channel::Kind kind = c.kind == 'D'   ? model::Channel::Kind::Drive
                                    : c.kind == 'U' ? model::Channel::Kind::Control
                                                    : model::Channel::Kind::Measure;
        Monomial m;
        m.channel = model::Channel{kind, idx};
        return {m};
      }
      std::vector<Monomial> operator()(const Expr::Operator& o) {
        Monomial m;
        m.ops.emplace_back(o.kind, ex.resolve_subsystem(o));
        return {m};
      }
      std::vector<Monomial> operator()(const Expr::Product& p) {
        std::vector<Monomial> acc = {Monomial{}};
        for (const auto& f : p.factors) {
          std::vector<Monomial> fs = ex.expand(f);
          std::vector<Monomial> next;
          next.reserve(acc.size() * fs.size());
          for (const auto& a : acc) {
            for (const auto& b : fs) {
              Monomial m = a;
              m.coeff *= b.coeff;
              m.ops.insert(m.ops.end(), b.ops.begin(), b.ops.end());
              if (b.channel) {
                if (m.channel) {
                  throw EvalError("MultipleChannels",
                                  "a term may bind at most one channel amplitude");
                }
                m.channel = b.channel;
              }
              m.nonlinear_channel = m.nonlinear_channel || b.nonlinear_channel;
              next.push_back(std::move(m));
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
      std::vector<Monomial> operator()(const Expr::Sum& s) {
        std::vector<Monomial> acc;
        for (const auto& t : s.terms) {
          auto ms = ex.expand(t);
          acc.insert(acc.end(), ms.begin(), ms.end());
        }
        return acc;
      }
      std::vector<Monomial> operator()(const Expr::SumMacro& s) {
        int lo = ex.resolve_bound(s.lo);
        int hi = ex.resolve_bound(s.hi);
        std::vector<Monomial> acc;
        auto saved = ex.bindings.find(s.var) != ex.bindings.end()
                         ? std::optional<int>(ex.bindings[s.var])
                         : std::nullopt;
        for (int i = lo; i <= hi; ++i) {  // bounds are inclusive
          ex.bindings[s.var] = i;
          auto ms = ex.expand(s.body);
          acc.insert(acc.end(), ms.begin(), ms.end());
        }
        if (saved) {
          ex.bindings[s.var] = *saved;
        } else {
          ex.bindings.erase(s.var);
        }
        return acc;
      }
      std::vector<Monomial> operator()(const Expr::Nonlinear& n) {
        // Arguments must be operator-free. A channel inside the function
        // marks the whole term as an unsupported nonlinear drive; constant
        // arguments evaluate numerically.
        bool channel_inside = false;
        std::optional<model::Channel> channel;
        double value = 0.0;
        for (const auto& arg : n.args) {
          auto ms = ex.expand(arg);
          double sum = 0.0;
          for (const auto& m : ms) {
            if (!m.ops.empty()) {
              throw EvalError("OperatorInsideFunction",
                              "operators inside " + n.fn + "() are not supported");
            }
            if (m.channel) {
              channel_inside = true;
              if (!channel) channel = m.channel;
            } else {
              sum += m.coeff.real();
            }
          }
          value = sum;  // single-argument functions only; last one wins
        }
        if (channel_inside) {
          Monomial m;
          m.channel = channel;
          m.nonlinear_channel = true;
          return {m};
        }
        Monomial m;
        if (n.fn == "cos") {
          m.coeff = std::cos(value);
        } else if (n.fn == "sin") {
          m.coeff = std::sin(value);
        } else if (n.fn == "sqrt") {
          m.coeff = std::sqrt(value);
        } else if (n.fn == "abs") {
          m.coeff = std::abs(value);
        } else if (n.fn == "exp") {
          m.coeff = std::exp(value);
        } else {
          throw EvalError("OperatorInsideFunction", "unknown function " + n.fn);
        }
        return {m};
      }
      std::vector<Monomial> operator()(const Expr::Negate& n) {
        auto ms = ex.expand(n.arg);
        for (auto& m : ms) m.coeff = -m.coeff;
        return ms;
      }
    };
    return std::visit(Visitor{*this}, e->node);
  }
};

}  // namespace

long long SubsystemLayout::total_dim() const {
  long long d = 1;
  for (const auto& s : subsystems) d *= s.dim;
  return d;
}

long long SubsystemLayout::stride(size_t k) const {
  long long s = 1;
  for (size_t i = 0; i < k; ++i) s *= subsystems[i].dim;
  return s;
}

int SubsystemLayout::unique_oscillator() const {
  int found = -1;
  for (size_t i = 0; i < subsystems.size(); ++i) {
    if (subsystems[i].kind == Subsystem::Kind::Oscillator) {
      if (found >= 0) return -1;
      found = static_cast<int>(i);
    }
  }
  return found;
}

SubsystemLayout SubsystemLayout::qubits(int n) {
  SubsystemLayout l;
  l.subsystems.assign(static_cast<size_t>(n), Subsystem{Subsystem::Kind::Qubit, 2});
  return l;
}

Matrix operator_matrix(OperatorKind kind, int dim) {
  Matrix lower = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix raise = lower.adjoint();
  Matrix number = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) number(n, n) = n;

  switch (kind) {
    case OperatorKind::Lower:
    case OperatorKind::Sm:
      return lower;
    case OperatorKind::Raise:
    case OperatorKind::Sp:
      return raise;
    case OperatorKind::Number:
    case OperatorKind::O:
      return number;
    case OperatorKind::X:
      return lower + raise;
    case OperatorKind::Y:
      return Complex(0, 1) * (raise - lower);
    case OperatorKind::Z:
      return Matrix::Identity(dim, dim) - 2.0 * number;
  }
  return Matrix::Zero(dim, dim);
}

Matrix embed_operator(const Matrix& op, size_t subsystem, const SubsystemLayout& layout) {
  long long total = layout.total_dim();
  long long stride = layout.stride(subsystem);
  int dim = layout.subsystems[subsystem].dim;
  long long outer = total / (stride * dim);

  Matrix full = Matrix::Zero(total, total);
  for (long long hi = 0; hi < outer; ++hi) {
    for (long long lo = 0; lo < stride; ++lo) {
      long long base = hi * stride * dim + lo;
      for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
          if (op(m, n) != Complex(0, 0)) {
            full(base + m * stride, base + n * stride) = op(m, n);
          }
        }
      }
    }
  }
  return full;
}

double EvaluatedHamiltonian::subsystem_frame_frequency(size_t k) const {
  long long ground = 0;
  long long excited = layout.stride(k);
  return (static_part(excited, excited) - static_part(ground, ground)).real();
}

EvaluatedHamiltonian bind_and_evaluate(const std::vector<ExprPtr>& terms,
                                       const std::map<std::string, double>& vars,
                                       const SubsystemLayout& layout, int n_qubits) {
  EvaluatedHamiltonian out;
  out.layout = layout;
  long long dim = layout.total_dim();
  out.static_part = Matrix::Zero(dim, dim);

  Expander ex{vars, layout, n_qubits, {}};

  std::vector<Monomial> monomials;
  for (const auto& t : terms) {
    auto ms = ex.expand(t);
    monomials.insert(monomials.end(), ms.begin(), ms.end());
  }

  for (const auto& m : monomials) {
    if (m.nonlinear_channel) {
      if (m.channel) {
        auto& d = out.drives[*m.channel];
        if (d.matrix.size() == 0) d.matrix = Matrix::Zero(dim, dim);
        d.nonlinear = true;
      }
      continue;
    }
    Matrix product = Matrix::Identity(dim, dim);
    std::set<int> touched;
    for (const auto& [kind, sub] : m.ops) {
      Matrix op = operator_matrix(kind, layout.subsystems[sub].dim);
      product = product * embed_operator(op, sub, layout);
      touched.insert(sub);
    }
    if (m.channel) {
      auto& d = out.drives[*m.channel];
      if (d.matrix.size() == 0) d.matrix = Matrix::Zero(dim, dim);
      d.matrix += m.coeff * product;
      d.subsystems.insert(touched.begin(), touched.end());
    } else {
      out.static_part += m.coeff * product;
    }
  }

  double residual = (out.static_part - out.static_part.adjoint()).cwiseAbs().maxCoeff();
  if (residual > kHermitianTolerance) {
    throw EvalError("NonHermitianStatic",
                    "static part deviates from Hermitian by " + std::to_string(residual));
  }
  for (auto& [ch, d] : out.drives) {
    if (d.nonlinear || d.matrix.size() == 0) continue;
    double dr = (d.matrix - d.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (dr > kHermitianTolerance) {
      throw EvalError("NonHermitianStatic",
                      "drive coupling for " + ch.str() + " is not Hermitian");
    }
  }
  return out;
}

EvaluatedHamiltonian evaluate_hamiltonian(const model::HamiltonianDict& dict,
                                          const SubsystemLayout& layout, int n_qubits) {
  auto terms = parse_hstr(dict.h_str);
  return bind_and_evaluate(terms, dict.vars_map(), layout, n_qubits);
}

SubsystemLayout duffing_layout(int n_qubits, int levels) {
  SubsystemLayout l;
  l.subsystems.assign(static_cast<size_t>(n_qubits),
                      Subsystem{Subsystem::Kind::Oscillator, levels});
  return l;
}

Matrix duffing_terms(const SubsystemLayout& layout,
                     const std::vector<double>& anharmonicities) {
  long long dim = layout.total_dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (size_t k = 0; k < layout.subsystems.size() && k < anharmonicities.size(); ++k) {
    int d = layout.subsystems[k].dim;
    Matrix local = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      local(n, n) = 0.5 * anharmonicities[k] * (1.0 - n) * n;
    }
    out += embed_operator(local, k, layout);
  }
  return out;
}

double u_channel_frequency(const std::vector<model::UChannelLoTerm>& spec,
                           const std::vector<double>& qubit_lo_freq) {
  double f = 0.0;
  for (const auto& term : spec) {
    if (term.scale.imag() != 0.0) {
      throw EvalError("ComplexScaleUnsupported",
                      "u_channel_lo scale with nonzero imaginary part has no frequency "
                      "interpretation");
    }
    if (term.q < 0 || static_cast<size_t>(term.q) >= qubit_lo_freq.size()) {
      throw EvalError("DimensionMismatch", "u_channel_lo references missing qubit " +
                                               std::to_string(term.q));
    }
    f += term.scale.real() * qubit_lo_freq[term.q];
  }
  return f;
}

}  // namespace qobjsim::ham
