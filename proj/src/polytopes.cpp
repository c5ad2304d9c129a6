#include "bnl/polytopes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace bnl {

namespace {

int bit(std::uint32_t table, std::uint32_t index) { return static_cast<int>((table >> index) & 1u); }

// Deterministic behavior from a response map settings -> outcomes.
template <typename Response>
Behavior deterministic(const Scenario& sc, Response&& response) {
  std::vector<double> table(sc.table_size(), 0.0);
  for (SettingsMask s = 0; s < sc.num_settings(); ++s) table[sc.index(s, response(s))] = 1.0;
  return Behavior(sc, std::move(table));
}

OutcomeMask put(OutcomeMask o, int party, int value) {
  return value ? (o | (OutcomeMask{1} << party)) : o;
}

void require_parties(const ModelClass& model, const Scenario& sc, int n) {
  if (sc.num_parties() != n) {
    throw UnsupportedError(to_string(model) + " vertices are available for n = " +
                           std::to_string(n) + " only, got n = " +
                           std::to_string(sc.num_parties()));
  }
}

// The three ways to split parties {0,1,2} into a singleton and a pair.
struct Bipartition {
  int single;
  int first;
  int second;
};
constexpr std::array<Bipartition, 3> kBipartitions{{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}};

void local_vertices(const Scenario& sc, const std::function<void(const Behavior&)>& visit) {
  const int n = sc.num_parties();
  if (n > 6) throw UnsupportedError("Local vertices are enumerated for n <= 6");
  // Party i answers bit(f_i, X_i); all f packed two bits per party.
  const std::uint32_t count = 1u << (2 * n);
  for (std::uint32_t packed = 0; packed < count; ++packed) {
    visit(deterministic(sc, [&](SettingsMask s) {
      OutcomeMask o = 0;
      for (int i = 0; i < n; ++i) {
        o = put(o, i, bit(packed >> (2 * i), setting_of(s, i)));
      }
      return o;
    }));
  }
}

void bilocal_vertices(const Scenario& sc, const std::function<void(const Behavior&)>& visit) {
  for (const auto& bp : kBipartitions) {
    for (std::uint32_t single = 0; single < 4; ++single) {
      for (std::uint32_t f1 = 0; f1 < 16; ++f1) {
        for (std::uint32_t f2 = 0; f2 < 16; ++f2) {
          visit(deterministic(sc, [&](SettingsMask s) {
            const std::uint32_t pair = setting_of(s, bp.first) | (setting_of(s, bp.second) << 1);
            OutcomeMask o = put(0, bp.single, bit(single, setting_of(s, bp.single)));
            o = put(o, bp.first, bit(f1, pair));
            return put(o, bp.second, bit(f2, pair));
          }));
        }
      }
    }
  }
}

void time_ordered_vertices(const Scenario& sc,
                           const std::function<void(const Behavior&)>& visit) {
  for (const auto& bp : kBipartitions) {
    for (int direction = 0; direction < 2; ++direction) {
      const int sender = direction == 0 ? bp.first : bp.second;
      const int receiver = direction == 0 ? bp.second : bp.first;
      for (std::uint32_t single = 0; single < 4; ++single) {
        for (std::uint32_t fs = 0; fs < 4; ++fs) {
          for (std::uint32_t fr = 0; fr < 16; ++fr) {
            visit(deterministic(sc, [&](SettingsMask s) {
              OutcomeMask o = put(0, bp.single, bit(single, setting_of(s, bp.single)));
              o = put(o, sender, bit(fs, setting_of(s, sender)));
              const std::uint32_t arg = setting_of(s, receiver) | (setting_of(s, sender) << 1);
              return put(o, receiver, bit(fr, arg));
            }));
          }
        }
      }
    }
  }
}

void no_signaling_bilocal_vertices(const Scenario& sc,
                                   const std::function<void(const Behavior&)>& visit) {
  const auto boxes = bipartite_no_signaling_extremal_boxes();
  for (const auto& bp : kBipartitions) {
    for (std::uint32_t single = 0; single < 4; ++single) {
      for (const auto& box : boxes) {
        std::vector<double> table(sc.table_size(), 0.0);
        for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
          const int a = bit(single, setting_of(s, bp.single));
          const SettingsMask pair_settings =
              setting_of(s, bp.first) | (setting_of(s, bp.second) << 1);
          for (OutcomeMask po = 0; po < 4; ++po) {
            const double p = box.p(pair_settings, po);
            if (p == 0.0) continue;
            OutcomeMask o = put(0, bp.single, a);
            o = put(o, bp.first, bit(po, 0));
            o = put(o, bp.second, bit(po, 1));
            table[sc.index(s, o)] = p;
          }
        }
        visit(Behavior(sc, std::move(table)));
      }
    }
  }
}

// First-measured party j answers f(X_j); every other party k answers
// g_k(X_k, X_j). At a vertex a_j is fixed by X_j, so conditioning on the
// broadcast setting alone covers conditioning on (X_j, a_j).
void broadcast_vertices(const Scenario& sc, std::optional<int> only_first,
                        const std::function<void(const Behavior&)>& visit) {
  for (int j = 0; j < 3; ++j) {
    if (only_first && *only_first != j) continue;
    int others[2];
    int k = 0;
    for (int i = 0; i < 3; ++i) {
      if (i != j) others[k++] = i;
    }
    for (std::uint32_t f = 0; f < 4; ++f) {
      for (std::uint32_t g1 = 0; g1 < 16; ++g1) {
        for (std::uint32_t g2 = 0; g2 < 16; ++g2) {
          visit(deterministic(sc, [&](SettingsMask s) {
            const int xj = setting_of(s, j);
            OutcomeMask o = put(0, j, bit(f, xj));
            o = put(o, others[0], bit(g1, setting_of(s, others[0]) | (xj << 1)));
            return put(o, others[1], bit(g2, setting_of(s, others[1]) | (xj << 1)));
          }));
        }
      }
    }
  }
}

void one_way_vertices(const ModelClass& model, const Scenario& sc,
                      const std::function<void(const Behavior&)>& visit) {
  const int sender = model.sender;
  const int receiver = model.receiver;
  if (sender == receiver || sender < 0 || receiver < 0 || sender > 1 || receiver > 1) {
    throw UnsupportedError("OneWay needs distinct sender and receiver among parties 1 and 2");
  }
  for (std::uint32_t fs = 0; fs < 4; ++fs) {
    for (std::uint32_t fr = 0; fr < 16; ++fr) {
      visit(deterministic(sc, [&](SettingsMask s) {
        OutcomeMask o = put(0, sender, bit(fs, setting_of(s, sender)));
        return put(o, receiver, bit(fr, setting_of(s, receiver) | (setting_of(s, sender) << 1)));
      }));
    }
  }
}

}  // namespace

ModelClass parse_model(std::string_view text) {
  if (text == "Local") return ModelClass::local();
  if (text == "BL") return ModelClass::bilocal();
  if (text == "TOBL") return ModelClass::time_ordered_bilocal();
  if (text == "NSBL") return ModelClass::no_signaling_bilocal();
  if (text == "BC1") return ModelClass::broadcast();
  auto number_between = [&](std::size_t from, std::size_t to) {
    const auto digits = text.substr(from, to - from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ParseError("expected a party number in model '" + std::string(text) + "'", from);
    }
    return std::stoi(std::string(digits));
  };
  if (text.starts_with("BC1[") && text.ends_with("]")) {
    return ModelClass::broadcast(number_between(4, text.size() - 1) - 1);
  }
  if (text.starts_with("OneWay(") && text.ends_with(")")) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected OneWay(s,r)", 7);
    return ModelClass::one_way(number_between(7, comma) - 1,
                               number_between(comma + 1, text.size() - 1) - 1);
  }
  throw ParseError("unknown model class '" + std::string(text) + "'", 0);
}

std::string to_string(const ModelClass& model) {
  switch (model.kind) {
    case ModelKind::Local: return "Local";
    case ModelKind::BL: return "BL";
    case ModelKind::TOBL: return "TOBL";
    case ModelKind::NSBL: return "NSBL";
    case ModelKind::BC1:
      return model.first_party ? "BC1[" + std::to_string(*model.first_party + 1) + "]" : "BC1";
    case ModelKind::OneWay:
      return "OneWay(" + std::to_string(model.sender + 1) + "," +
             std::to_string(model.receiver + 1) + ")";
  }
  return "?";
}

std::vector<Behavior> bipartite_no_signaling_extremal_boxes() {
  const Scenario sc(2);
  std::vector<Behavior> boxes;
  for (std::uint32_t fa = 0; fa < 4; ++fa) {
    for (std::uint32_t fb = 0; fb < 4; ++fb) {
      boxes.push_back(deterministic(sc, [&](SettingsMask s) {
        return put(put(0, 0, bit(fa, setting_of(s, 0))), 1, bit(fb, setting_of(s, 1)));
      }));
    }
  }
  // a XOR b = x*y XOR mu*x XOR nu*y XOR sigma, uniformly over the solutions.
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      for (int sigma = 0; sigma < 2; ++sigma) {
        std::vector<double> table(sc.table_size(), 0.0);
        for (SettingsMask s = 0; s < 4; ++s) {
          const int x = setting_of(s, 0), y = setting_of(s, 1);
          const int parity = (x & y) ^ (mu & x) ^ (nu & y) ^ sigma;
          for (OutcomeMask o = 0; o < 4; ++o) {
            if ((bit(o, 0) ^ bit(o, 1)) == parity) table[sc.index(s, o)] = 0.5;
          }
        }
        boxes.emplace_back(sc, std::move(table));
      }
    }
  }
  return boxes;
}

void for_each_vertex(const ModelClass& model, const Scenario& sc,
                     const std::function<void(const Behavior&)>& visit) {
  switch (model.kind) {
    case ModelKind::Local:
      return local_vertices(sc, visit);
    case ModelKind::BL:
      require_parties(model, sc, 3);
      return bilocal_vertices(sc, visit);
    case ModelKind::TOBL:
      require_parties(model, sc, 3);
      return time_ordered_vertices(sc, visit);
    case ModelKind::NSBL:
      require_parties(model, sc, 3);
      return no_signaling_bilocal_vertices(sc, visit);
    case ModelKind::BC1:
      require_parties(model, sc, 3);
      if (model.first_party && (*model.first_party < 0 || *model.first_party > 2)) {
        throw UnsupportedError("BC1 first party must be 1, 2 or 3");
      }
      return broadcast_vertices(sc, model.first_party, visit);
    case ModelKind::OneWay:
      require_parties(model, sc, 2);
      return one_way_vertices(model, sc, visit);
  }
}

VertexSet enumerate_vertices(const ModelClass& model, const Scenario& scenario) {
  VertexSet set{model, scenario, {}};
  std::map<std::vector<double>, std::size_t> seen;
  for_each_vertex(model, scenario, [&](const Behavior& v) {
    std::vector<double> key(v.table().begin(), v.table().end());
    if (seen.emplace(std::move(key), set.vertices.size()).second) set.vertices.push_back(v);
  });
  return set;
}

double round12(double value) {
  const double r = std::round(value * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

BoundResult bound(const Expression& expr, const ModelClass& model) {
  const auto coeffs = dense_functional(expr);
  std::optional<BoundResult> best;
  std::size_t index = 0;
  for_each_vertex(model, expr.scenario(), [&](const Behavior& v) {
    double value = 0.0;
    const auto table = v.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] != 0.0) value += coeffs[i] * table[i];
    }
    if (!best || value > best->raw_value) best = BoundResult{0.0, value, v, index};
    ++index;
  });
  best->value = round12(best->raw_value);
  return *best;
}

DenseMatrix membership_matrix(const VertexSet& vertices) {
  const std::size_t rows = vertices.scenario.table_size() + 1;
  DenseMatrix a(rows, vertices.vertices.size());
  for (std::size_t v = 0; v < vertices.vertices.size(); ++v) {
    const auto table = vertices.vertices[v].table();
    for (std::size_t e = 0; e < table.size(); ++e) a(e, v) = table[e];
    a(rows - 1, v) = 1.0;
  }
  return a;
}

MembershipResult membership(const Behavior& behavior, const VertexSet& vertices, double tol) {
  if (!(behavior.scenario() == vertices.scenario)) {
    throw StructuralError("behavior and vertex set have different scenarios");
  }
  const auto a = membership_matrix(vertices);
  std::vector<double> b(behavior.table().begin(), behavior.table().end());
  b.push_back(1.0);

  LpOptions options;
  options.feasibility_tol = tol;
  const auto lp = lp_feasibility(a, b, options);

  MembershipResult result;
  result.lp_iterations = lp.iterations;
  const std::size_t entries = behavior.table().size();
  if (lp.feasible) {
    std::vector<double> mixture(entries, 0.0);
    for (std::size_t v = 0; v < lp.x.size(); ++v) {
      if (lp.x[v] <= 0.0) continue;
      result.weights.emplace_back(v, lp.x[v]);
      const auto table = vertices.vertices[v].table();
      for (std::size_t e = 0; e < entries; ++e) mixture[e] += lp.x[v] * table[e];
    }
    for (std::size_t e = 0; e < entries; ++e) {
      result.reconstruction_error =
          std::max(result.reconstruction_error, std::abs(mixture[e] - behavior.table()[e]));
    }
    result.member = result.reconstruction_error <= tol;
    if (!result.member) {
      throw LpNumericalError("membership LP reported feasibility but the mixture misses by " +
                             std::to_string(result.reconstruction_error));
    }
    return result;
  }

  // y = (w, y0) with w.v + y0 <= 0 for every vertex and w.P + y0 > 0.
  std::vector<double> w(lp.certificate.begin(), lp.certificate.begin() + entries);
  double scale = 0.0;
  for (double c : w) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw LpNumericalError("degenerate infeasibility certificate");
  for (double& c : w) c /= scale;

  auto apply = [&](std::span<const double> table) {
    double s = 0.0;
    for (std::size_t e = 0; e < entries; ++e) s += w[e] * table[e];
    return s;
  };
  result.certificate_value = apply(behavior.table());
  result.vertex_maximum = -INFINITY;
  for (const auto& v : vertices.vertices) {
    result.vertex_maximum = std::max(result.vertex_maximum, apply(v.table()));
  }
  result.gap = result.certificate_value - result.vertex_maximum;
  result.certificate = std::move(w);
  if (result.gap <= tol) {
    throw LpNumericalError("infeasibility certificate does not separate (gap " +
                           std::to_string(result.gap) + ")");
  }
  return result;
}

MembershipResult membership(const Behavior& behavior, const ModelClass& model, double tol) {
  return membership(behavior, enumerate_vertices(model, behavior.scenario()), tol);
}

double lp_bound(const Expression& expr, const VertexSet& vertices) {
  // Variables: table entries P (entries) then weights q (vertices).
  // Rows: P_e - sum_v q_v v_e = 0 for each entry, and sum_v q_v = 1.
  const std::size_t entries = vertices.scenario.table_size();
  const std::size_t count = vertices.vertices.size();
  DenseMatrix a(entries + 1, entries + count);
  for (std::size_t e = 0; e < entries; ++e) a(e, e) = 1.0;
  for (std::size_t v = 0; v < count; ++v) {
    const auto table = vertices.vertices[v].table();
    for (std::size_t e = 0; e < entries; ++e) a(e, entries + v) = -table[e];
    a(entries, entries + v) = 1.0;
  }
  std::vector<double> b(entries + 1, 0.0);
  b[entries] = 1.0;
  std::vector<double> c(entries + count, 0.0);
  const auto coeffs = dense_functional(expr);
  std::copy(coeffs.begin(), coeffs.end(), c.begin());
  const auto lp = lp_maximize(a, b, c);
  if (lp.status != LpStatus::Optimal) throw LpNumericalError("bound LP did not reach an optimum");
  return lp.objective;
}

}  // namespace bnl
