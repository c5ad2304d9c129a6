#include "bnl/expressions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>

#include "bits.hpp"

namespace bnl {

namespace {

void check_term(const Term& term, const Scenario& scenario) {
  if (term.factors.empty()) throw StructuralError("term without factors");
  PartyMask seen = 0;
  for (const auto& f : term.factors) {
    if (f.party < 0 || f.party >= scenario.num_parties()) {
      throw StructuralError("party index " + std::to_string(f.party + 1) +
                            " outside scenario of " + std::to_string(scenario.num_parties()) +
                            " parties");
    }
    if (f.setting != 0 && f.setting != 1) throw StructuralError("setting must be 0 or 1");
    if (f.sign != 1 && f.sign != -1) throw StructuralError("outcome sign must be +1 or -1");
    const PartyMask bit = PartyMask{1} << f.party;
    if (seen & bit) {
      throw StructuralError("party " + std::to_string(f.party + 1) + " repeated within a term");
    }
    seen |= bit;
  }
}

Term event(double coefficient, std::vector<Factor> factors) {
  return Term{coefficient, std::move(factors)};
}

// <a_{p0}^{s0} a_{p1}^{s1} ...> expanded into signed probability terms.
std::vector<Term> expand_correlator(double coefficient,
                                    const std::vector<std::pair<int, int>>& party_settings) {
  std::vector<Term> terms;
  const std::size_t k = party_settings.size();
  for (std::uint32_t o = 0; o < (1u << k); ++o) {
    Term t;
    t.coefficient = (std::popcount(o) & 1) ? -coefficient : coefficient;
    for (std::size_t i = 0; i < k; ++i) {
      t.factors.push_back({party_settings[i].first, party_settings[i].second,
                           ((o >> i) & 1u) ? -1 : 1});
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

void append(std::vector<Term>& out, std::vector<Term> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

Expression make_s3() {
  // +<000> +<001> +<010> -<011> +<100> -<101> -<110> -<111>
  static constexpr int signs[8] = {+1, +1, +1, -1, +1, -1, -1, -1};
  std::vector<Term> terms;
  for (int xyz = 0; xyz < 8; ++xyz) {
    const int x = (xyz >> 2) & 1, y = (xyz >> 1) & 1, z = xyz & 1;
    append(terms, expand_correlator(signs[xyz], {{0, x}, {1, y}, {2, z}}));
  }
  return Expression("S3", Scenario(3), std::move(terms));
}

Expression make_sprime() {
  return Expression("Sprime", Scenario(3),
                    {event(1, {{0, 0, +1}, {1, 0, +1}, {2, 0, +1}}),
                     event(1, {{0, 0, -1}, {1, 0, +1}, {2, 0, +1}}),
                     event(1, {{0, 1, +1}, {1, 0, -1}, {2, 0, -1}}),
                     event(1, {{0, 1, -1}, {1, 0, -1}, {2, 0, -1}})});
}

Expression make_rn(int n) {
  if (n < 3 || n > kMaxParties) {
    throw StructuralError("RN needs 3 <= n <= " + std::to_string(kMaxParties));
  }
  std::vector<Term> terms;
  auto all_at = [n](int setting, int sign) {
    std::vector<Factor> f;
    for (int i = 0; i < n; ++i) f.push_back({i, setting, sign});
    return f;
  };
  terms.push_back(event(1, all_at(0, +1)));
  // Party j switches to setting 1, everyone outputs +.
  for (int j = 0; j < n; ++j) {
    auto f = all_at(0, +1);
    f[j].setting = 1;
    terms.push_back(event(-1, std::move(f)));
  }
  // Party j stays at setting 0 with +, everyone else at setting 1 with -.
  for (int j = 0; j < n; ++j) {
    auto f = all_at(1, -1);
    f[j] = {j, 0, +1};
    terms.push_back(event(-1, std::move(f)));
  }
  // At N = 3 this is R3 term for term, in the same order.
  return Expression(n == 3 ? "R3" : "R" + std::to_string(n), Scenario(n), std::move(terms));
}

Expression make_t(int n) {
  if (n != 2 && n != 3) throw StructuralError("T is defined for n = 2 or 3");
  return Expression("T", Scenario(n),
                    {event(1, {{0, 0, +1}, {1, 0, +1}}), event(1, {{0, 0, -1}, {1, 1, +1}}),
                     event(1, {{0, 1, +1}, {1, 0, -1}}), event(1, {{0, 1, -1}, {1, 1, -1}})});
}

Expression make_chsh(int n) {
  if (n != 2 && n != 3) throw StructuralError("B is defined for n = 2 or 3");
  std::vector<Term> terms;
  append(terms, expand_correlator(1, {{0, 0}, {1, 0}}));
  append(terms, expand_correlator(1, {{0, 0}, {1, 1}}));
  append(terms, expand_correlator(1, {{0, 1}, {1, 0}}));
  append(terms, expand_correlator(-1, {{0, 1}, {1, 1}}));
  return Expression("B", Scenario(n), std::move(terms));
}

Expression make_mermin3() {
  std::vector<Term> terms;
  append(terms, expand_correlator(1, {{0, 0}, {1, 0}, {2, 0}}));
  append(terms, expand_correlator(-1, {{0, 0}, {1, 1}, {2, 1}}));
  append(terms, expand_correlator(-1, {{0, 1}, {1, 0}, {2, 1}}));
  append(terms, expand_correlator(-1, {{0, 1}, {1, 1}, {2, 0}}));
  return Expression("Mermin3", Scenario(3), std::move(terms));
}

void require_tripartite(std::string_view name, int n) {
  if (n != 3) {
    throw StructuralError(std::string(name) + " is tripartite; n = " + std::to_string(n) +
                          " is invalid");
  }
}

// Recursive-descent parser over the expression grammar.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Term> parse_all() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      append(terms, parse_term(sign));
      first = false;
      skip_ws();
    }
    return terms;
  }

  int max_party() const { return max_party_; }

 private:
  std::vector<Term> parse_term(double sign) {
    double coefficient = 1.0;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coefficient = parse_number();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    coefficient *= sign;
    if (peek() == 'P') {
      ++pos_;
      expect('(');
      std::vector<Factor> factors;
      PartyMask seen = 0;
      while (true) {
        skip_ws();
        const std::size_t at = pos_;
        auto [party, setting] = parse_party_setting();
        int s = 0;
        if (peek() == '+') s = 1;
        else if (peek() == '-') s = -1;
        else fail("expected outcome sign '+' or '-'");
        ++pos_;
        note_party(party, seen, at);
        factors.push_back({party, setting, s});
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
      return {Term{coefficient, std::move(factors)}};
    }
    if (peek() == '<') {
      ++pos_;
      std::vector<std::pair<int, int>> ps;
      PartyMask seen = 0;
      while (true) {
        skip_ws();
        if (peek() == '>') {
          if (ps.empty()) fail("empty correlator");
          ++pos_;
          break;
        }
        const std::size_t at = pos_;
        auto [party, setting] = parse_party_setting();
        note_party(party, seen, at);
        ps.emplace_back(party, setting);
      }
      return expand_correlator(coefficient, ps);
    }
    fail("expected 'P(' or '<'");
  }

  std::pair<int, int> parse_party_setting() {
    if (peek() != 'a') fail("expected party token 'a<k>^<setting>'");
    ++pos_;
    const std::size_t start = pos_;
    int party = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) party = party * 10 + (text_[pos_++] - '0');
    if (pos_ == start) fail("expected party number");
    if (party < 1 || party > kMaxParties) {
      pos_ = start;
      fail("party number out of range");
    }
    expect('^');
    if (peek() != '0' && peek() != '1') fail("setting must be 0 or 1");
    const int setting = text_[pos_++] - '0';
    max_party_ = std::max(max_party_, party);
    return {party - 1, setting};
  }

  void note_party(int party, PartyMask& seen, std::size_t at) {
    const PartyMask bit = PartyMask{1} << party;
    if (seen & bit) {
      pos_ = at;
      fail("party " + std::to_string(party + 1) + " repeated within a term");
    }
    seen |= bit;
  }

  double parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const char* p = begin;
    while (p < end && (std::isdigit(static_cast<unsigned char>(*p)) || *p == '.' || *p == 'e' ||
                       *p == 'E' ||
                       ((*p == '+' || *p == '-') && p > begin && (p[-1] == 'e' || p[-1] == 'E')))) {
      ++p;
    }
    const std::string token(begin, p);
    std::size_t used = 0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    if (used != token.size()) fail("malformed number");
    pos_ += used;
    return value;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_party_ = 0;
};

}  // namespace

Expression::Expression(std::string name, Scenario scenario, std::vector<Term> terms)
    : name_(std::move(name)), scenario_(scenario), terms_(std::move(terms)) {
  for (const auto& t : terms_) check_term(t, scenario_);
}

bool Expression::has_partial_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [this](const Term& t) {
    return static_cast<int>(t.factors.size()) < scenario_.num_parties();
  });
}

double Expression::algebraic_maximum() const {
  double total = 0.0;
  for (const auto& t : terms_) total += std::max(t.coefficient, 0.0);
  return total;
}

Expression operator+(const Expression& lhs, const Expression& rhs) {
  if (!(lhs.scenario() == rhs.scenario())) {
    throw StructuralError("cannot add expressions over different scenarios");
  }
  std::vector<Term> terms = lhs.terms();
  terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
  return Expression(lhs.name() + "+" + rhs.name(), lhs.scenario(), std::move(terms));
}

std::vector<double> dense_functional(const Expression& expr) {
  const auto& sc = expr.scenario();
  std::vector<double> coeffs(sc.table_size(), 0.0);
  for (const auto& term : expr.terms()) {
    PartyMask present = 0;
    SettingsMask settings = 0;
    OutcomeMask fixed = 0;
    for (const auto& f : term.factors) {
      present |= PartyMask{1} << f.party;
      if (f.setting) settings |= SettingsMask{1} << f.party;
      if (f.sign < 0) fixed |= OutcomeMask{1} << f.party;
    }
    const PartyMask absent = sc.all_parties() & ~present;
    const std::uint32_t free_count = 1u << std::popcount(absent);
    for (std::uint32_t r = 0; r < free_count; ++r) {
      const OutcomeMask o = fixed | detail::deposit_bits(r, absent);
      coeffs[sc.index(settings, o)] += term.coefficient;
    }
  }
  return coeffs;
}

double evaluate_table(const Expression& expr, const Behavior& behavior) {
  if (!(expr.scenario() == behavior.scenario())) {
    throw StructuralError("expression is over " + std::to_string(expr.scenario().num_parties()) +
                          " parties but behavior has " +
                          std::to_string(behavior.num_parties()));
  }
  const auto& sc = expr.scenario();
  double total = 0.0;
  for (const auto& term : expr.terms()) {
    PartyMask present = 0;
    SettingsMask settings = 0;
    OutcomeMask fixed = 0;
    for (const auto& f : term.factors) {
      present |= PartyMask{1} << f.party;
      if (f.setting) settings |= SettingsMask{1} << f.party;
      if (f.sign < 0) fixed |= OutcomeMask{1} << f.party;
    }
    const PartyMask absent = sc.all_parties() & ~present;
    const std::uint32_t free_count = 1u << std::popcount(absent);
    double p = 0.0;
    for (std::uint32_t r = 0; r < free_count; ++r) {
      p += behavior.p(settings, fixed | detail::deposit_bits(r, absent));
    }
    total += term.coefficient * p;
  }
  return total;
}

double evaluate(const Expression& expr, const Behavior& behavior, double tol) {
  if (!(expr.scenario() == behavior.scenario())) {
    throw StructuralError("expression and behavior have different scenarios");
  }
  if (expr.has_partial_terms()) {
    const auto report = no_signaling_report(behavior, tol);
    if (!report.is_no_signaling) {
      throw SignalingError("partial terms are ambiguous on a signaling behavior", report);
    }
  }
  return evaluate_table(expr, behavior);
}

Expression builtin(std::string_view name, int n) {
  if (name == "S3") {
    require_tripartite(name, n);
    return make_s3();
  }
  if (name == "Sprime" || name == "S'") {
    require_tripartite(name, n);
    return make_sprime();
  }
  if (name == "I") {
    require_tripartite(name, n);
    Expression sum = make_s3() + make_sprime();
    return Expression("I", sum.scenario(), sum.terms());
  }
  if (name == "R3") {
    require_tripartite(name, n);
    return make_rn(3);
  }
  if (name == "RN") {
    Expression e = make_rn(n);
    return Expression("RN", e.scenario(), e.terms());
  }
  if (name == "T") return make_t(n);
  if (name == "B") return make_chsh(n);
  if (name == "Mermin3") {
    require_tripartite(name, n);
    return make_mermin3();
  }
  throw StructuralError("unknown built-in expression '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"S3", "Sprime", "I", "R3", "RN", "T", "B", "Mermin3"};
}

Expression parse_expression(std::string_view text, std::optional<int> n, std::string name) {
  Parser parser(text);
  auto terms = parser.parse_all();
  const int parties = n.value_or(std::max(2, parser.max_party()));
  if (parser.max_party() > parties) {
    throw StructuralError("expression mentions party " + std::to_string(parser.max_party()) +
                          " but the scenario has " + std::to_string(parties));
  }
  return Expression(std::move(name), Scenario(parties), std::move(terms));
}

std::string render(const Expression& expr) {
  std::string out;
  char buf[64];
  for (const auto& term : expr.terms()) {
    const double c = term.coefficient;
    std::snprintf(buf, sizeof buf, "%s%.17g*P(", c < 0 ? "- " : (out.empty() ? "" : "+ "),
                  std::abs(c));
    if (!out.empty()) out += ' ';
    out += buf;
    bool first = true;
    for (const auto& f : term.factors) {
      if (!first) out += ',';
      first = false;
      out += 'a' + std::to_string(f.party + 1) + '^' + std::to_string(f.setting) +
             (f.sign > 0 ? '+' : '-');
    }
    out += ')';
  }
  return out;
}

Expression expression_from_spec(std::string_view spec, std::optional<int> n) {
  const auto names = builtin_names();
  std::string_view base = spec;
  std::optional<int> arity = n;
  if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    base = spec.substr(0, colon);
    int value = 0;
    const auto digits = spec.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError("malformed arity suffix", colon + 1);
    }
    arity = value;
  }
  if (std::find(names.begin(), names.end(), base) != names.end() || base == "S'") {
    return builtin(base, arity.value_or(3));
  }
  return parse_expression(spec, n);
}

}  // namespace bnl
