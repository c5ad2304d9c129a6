#include "bnl/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace bnl {

namespace {

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Matrix2 projector(const BlochVector& n, int sign) {
  const double s = sign;
  return {{{Complex(0.5 * (1.0 + s * n.z), 0.0), 0.5 * s * Complex(n.x, -n.y)},
           {0.5 * s * Complex(n.x, n.y), Complex(0.5 * (1.0 - s * n.z), 0.0)}}};
}

// Applies a 2x2 operator on `qubit` in place.
void apply(std::vector<Complex>& psi, int qubit, const Matrix2& m) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const Complex a0 = psi[i];
    const Complex a1 = psi[i | stride];
    psi[i] = m[0][0] * a0 + m[0][1] * a1;
    psi[i | stride] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void check_parties(const StateVector& state, const ObservableSet& obs) {
  if (state.num_qubits() != obs.num_parties()) {
    throw StructuralError("state has " + std::to_string(state.num_qubits()) +
                          " qubits but observables are given for " +
                          std::to_string(obs.num_parties()) + " parties");
  }
}

BlochVector from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

// Recursively splits the state over outcomes of parties `party..n-1`.
void branch_outcomes(const std::vector<Complex>& original, std::vector<Complex> psi, int party,
                     int n, const ObservableSet& obs, SettingsMask settings, OutcomeMask outcomes,
                     std::vector<double>& row) {
  if (party == n) {
    double p = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) p += std::real(std::conj(original[i]) * psi[i]);
    row[outcomes] = p;
    return;
  }
  const auto& dir = obs.direction(party, setting_of(settings, party));
  for (int bitv = 0; bitv < 2; ++bitv) {
    std::vector<Complex> next = psi;
    apply(next, party, projector(dir, bitv ? -1 : 1));
    branch_outcomes(original, std::move(next), party + 1, n, obs, settings,
                    outcomes | (OutcomeMask(bitv) << party), row);
  }
}

int sign_power(int exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace

StateVector::StateVector(int n, std::vector<Complex> amplitudes)
    : n_(n), amplitudes_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxParties) throw StructuralError("qubit count out of range");
  if (amplitudes_.size() != (std::size_t{1} << n)) {
    throw StructuralError("state needs 2^n amplitudes");
  }
  if (std::abs(squared_norm() - 1.0) > kExactTolerance) {
    throw StructuralError("state is not normalized");
  }
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

StateVector ghz_state(int n, double t) {
  if (n < 2 || n > kMaxParties) {
    throw StructuralError("GHZ-like states need 2 <= n <= " + std::to_string(kMaxParties));
  }
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.front() = std::cos(t);
  amps.back() = std::sin(t);
  return StateVector(n, std::move(amps));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

ObservableSet::ObservableSet(std::vector<std::array<BlochVector, 2>> directions)
    : directions_(std::move(directions)) {
  for (const auto& pair : directions_) {
    for (const auto& v : pair) {
      if (std::abs(v.norm() - 1.0) > kExactTolerance) {
        throw StructuralError("measurement direction is not a unit vector");
      }
    }
  }
}

ObservableSet settings_from_params(const MeasurementParams& params) {
  std::vector<std::array<BlochVector, 2>> dirs;
  dirs.reserve(params.phi.size());
  for (double phi : params.phi) {
    dirs.push_back({from_angles(params.alpha, phi), from_angles(params.beta, phi + params.gamma)});
  }
  return ObservableSet(std::move(dirs));
}

ObservableSet settings_from_bloch_angles(std::span<const double> angles) {
  if (angles.size() % 4 != 0) throw StructuralError("need four angles per party");
  std::vector<std::array<BlochVector, 2>> dirs;
  for (std::size_t i = 0; i < angles.size(); i += 4) {
    dirs.push_back({from_angles(angles[i], angles[i + 1]), from_angles(angles[i + 2], angles[i + 3])});
  }
  return ObservableSet(std::move(dirs));
}

double event_probability(const StateVector& state, const ObservableSet& obs,
                         std::span<const Factor> factors) {
  check_parties(state, obs);
  const auto amps = state.amplitudes();

  // Few nonzero amplitudes (GHZ-like states): expand <psi|P|psi> directly as
  // sum_{u,v} conj(psi_u) psi_v prod_i <u_i|Pi_i|v_i>.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] != Complex(0.0, 0.0)) support.push_back(i);
  }
  if (support.size() <= 8) {
    std::vector<Matrix2> ops;
    PartyMask present = 0;
    for (const auto& f : factors) {
      ops.push_back(projector(obs.direction(f.party, f.setting), f.sign));
      present |= PartyMask{1} << f.party;
    }
    Complex total = 0.0;
    for (std::size_t u : support) {
      for (std::size_t v : support) {
        // Absent parties contribute the identity.
        if (((u ^ v) & ~static_cast<std::size_t>(present)) != 0) continue;
        Complex prod = std::conj(amps[u]) * amps[v];
        for (std::size_t k = 0; k < factors.size(); ++k) {
          const int q = factors[k].party;
          prod *= ops[k][(u >> q) & 1u][(v >> q) & 1u];
        }
        total += prod;
      }
    }
    return total.real();
  }

  std::vector<Complex> psi(amps.begin(), amps.end());
  for (const auto& f : factors) {
    apply(psi, f.party, projector(obs.direction(f.party, f.setting), f.sign));
  }
  double p = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) p += std::real(std::conj(amps[i]) * psi[i]);
  return p;
}

Behavior born_behavior(const StateVector& state, const ObservableSet& obs) {
  check_parties(state, obs);
  const int n = state.num_qubits();
  const Scenario sc(n);
  std::vector<double> table(sc.table_size());
  const std::vector<Complex> original(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<double> row(sc.num_outcomes());
  for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
    branch_outcomes(original, original, 0, n, obs, s, 0, row);
    for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) table[sc.index(s, o)] = row[o];
  }
  return Behavior(sc, std::move(table));
}

double quantum_value(const Expression& expr, const StateVector& state, const ObservableSet& obs) {
  if (expr.scenario().num_parties() != state.num_qubits()) {
    throw StructuralError("expression arity does not match the state");
  }
  double total = 0.0;
  for (const auto& term : expr.terms()) {
    total += term.coefficient * event_probability(state, obs, term.factors);
  }
  return total;
}

Behavior ghz_paper_correlation(int n) {
  if (n < 3 || n > kMaxParties) throw StructuralError("GHZ correlation needs 3 <= n <= 8");
  const Scenario sc(n);
  std::vector<double> table(sc.table_size());
  const double norm = 1.0 / static_cast<double>(sc.num_outcomes());
  for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
    // cos(pi/2 * k) is exactly 1, 0, -1, 0 for k mod 4 = 0..3.
    static constexpr int kCos[4] = {1, 0, -1, 0};
    const int c = kCos[std::popcount(s) % 4];
    for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) {
      const int product = (std::popcount(o) & 1) ? -1 : 1;
      table[sc.index(s, o)] = norm * (1.0 + c * product);
    }
  }
  return Behavior(sc, std::move(table));
}

Behavior broadcast_reproduction(int n) {
  if (n < 3 || n > kMaxParties) throw StructuralError("broadcast reproduction needs 3 <= n <= 8");
  const Scenario sc(n);
  const int m = n - 2;  // broadcasting parties
  const int p1 = n - 2;  // party N-1 (0-based)
  const int p2 = n - 1;  // party N
  std::vector<double> table(sc.table_size(), 0.0);
  const double broadcast_weight = 1.0 / static_cast<double>(1u << m);

  for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
    int sum = 0;
    for (int i = 0; i < m; ++i) sum += setting_of(s, i);
    const int x = sum % 4;
    const int y = x % 2;
    const int lo = x / 2;        // floor(x/2)
    const int hi = (x + 1) / 2;  // ceil(x/2)
    for (OutcomeMask head = 0; head < (1u << m); ++head) {
      const int l = (std::popcount(head) & 1) ? -1 : 1;
      // Four equiprobable joint assignments:
      // (a_{N-1}^0, a_{N-1}^1, a_N^y, a_N^{y+1 mod 2}).
      const int branches[4][4] = {
          {-1, +1, l * sign_power(lo + y + 1), l * sign_power(hi + y + 1)},
          {+1, +1, l * sign_power(lo + y), l * sign_power(hi + y + 1)},
          {+1, -1, l * sign_power(lo + y), l * sign_power(hi + y)},
          {-1, -1, l * sign_power(lo + y + 1), l * sign_power(hi + y)},
      };
      const int x1 = setting_of(s, p1);
      const int x2 = setting_of(s, p2);
      for (const auto& br : branches) {
        const int a1 = br[x1];
        const int a2 = x2 == y ? br[2] : br[3];
        OutcomeMask o = head;
        if (a1 < 0) o |= OutcomeMask{1} << p1;
        if (a2 < 0) o |= OutcomeMask{1} << p2;
        table[sc.index(s, o)] += 0.25 * broadcast_weight;
      }
    }
  }
  return Behavior(sc, std::move(table));
}

std::pair<double, MeasurementParams> svetlichny_settings() {
  // Equatorial measurements on the GHZ state give correlators
  // cos(sum phi + k gamma), k = number of parties using setting 1, so
  // S3 = cos(chi) + 3cos(chi+gamma) - 3cos(chi+2gamma) - cos(chi+3gamma).
  // gamma = pi/2 reduces this to 4(cos chi - sin chi), maximal at chi = -pi/4.
  constexpr double pi = std::numbers::pi;
  MeasurementParams params;
  params.alpha = pi / 2;
  params.beta = pi / 2;
  params.gamma = pi / 2;
  params.phi = {7 * pi / 4, 0.0, 0.0};
  return {pi / 4, params};
}

}  // namespace bnl
