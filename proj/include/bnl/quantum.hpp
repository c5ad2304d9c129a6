#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "bnl/expressions.hpp"
#include "bnl/scenario.hpp"

namespace bnl {

using Complex = std::complex<double>;

// Pure N-qubit state. Amplitude index bit i is qubit (party) i.
class StateVector {
 public:
  StateVector(int n, std::vector<Complex> amplitudes);

  int num_qubits() const { return n_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  double squared_norm() const;

 private:
  int n_;
  std::vector<Complex> amplitudes_;
};

// cos(t)|0...0> + sin(t)|1...1>, 2 <= n <= 8.
StateVector ghz_state(int n, double t);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
};

// Angles of the measurement ansatz shared by all parties: setting 0 has polar
// angle alpha and azimuth phi_i, setting 1 has polar angle beta and azimuth
// phi_i + gamma.
struct MeasurementParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<double> phi;
};

// Dichotomic observables n.sigma for each party and setting.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<std::array<BlochVector, 2>> directions);

  int num_parties() const { return static_cast<int>(directions_.size()); }
  const BlochVector& direction(int party, int setting) const {
    return directions_[party][setting];
  }

 private:
  std::vector<std::array<BlochVector, 2>> directions_;
};

ObservableSet settings_from_params(const MeasurementParams& params);

// Independent Bloch angles per party: (theta0, phi0, theta1, phi1) for each
// party, 4N values.
ObservableSet settings_from_bloch_angles(std::span<const double> angles);

// <psi| prod_i Pi_i |psi> for a joint event over any nonempty subset of
// parties, Pi = (1 + sign n.sigma) / 2.
double event_probability(const StateVector& state, const ObservableSet& obs,
                         std::span<const Factor> factors);

Behavior born_behavior(const StateVector& state, const ObservableSet& obs);

// Value of an expression on the Born-rule behavior, computed term by term.
double quantum_value(const Expression& expr, const StateVector& state, const ObservableSet& obs);

// P(a|X) = (1 + cos(pi/2 sum X_i) prod a_i) / 2^N, 3 <= n <= 8.
Behavior ghz_paper_correlation(int n);

// The (N-2)-event broadcasting model that reproduces ghz_paper_correlation:
// the first N-2 parties answer uniformly at random, the last two follow four
// equiprobable joint assignments keyed on x = (sum_{i<=N-2} X_i) mod 4 and the
// product l of the broadcasters' outcomes.
Behavior broadcast_reproduction(int n);

// GHZ state angle and equatorial settings reaching the Svetlichny maximum
// 4 sqrt(2).
std::pair<double, MeasurementParams> svetlichny_settings();

}  // namespace bnl
