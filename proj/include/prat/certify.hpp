#pragma once

// Seven-subfield certificate for Q(sqrt(p(p+2)), sqrt(p(p-2)), i).  For an
// abelian field of degree prime to p, p-rationality reduces to its cyclic
// subfields, here the seven quadratic ones.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prat/quadfield.hpp"

namespace prat {

inline constexpr const char* kCertificateSchema = "cert-v1";

struct SubfieldRecord {
  std::string label;  // K1..K7
  i64 d_input = 0;
  PRationalityVerdict verdict;
};

struct DiscriminantCheck {
  std::string label;  // K5, K6, K7
  i64 abs_discriminant = 0;
  /// 4 * product / (log p)^(exponent * A)
  double bound = 0.0;
  /// 2 for K5 and K6, 4 for K7.
  int exponent = 0;
  bool holds = false;
};

struct FlankWitness {
  u64 m = 0;
  u64 n = 0;
  double A = 0.0;
};

enum class Conclusion { Certified, Failed, Inconclusive };

const char* conclusion_name(Conclusion c) noexcept;

struct TriquadraticCertificate {
  std::string schema = kCertificateSchema;
  u64 p = 0;
  std::vector<SubfieldRecord> subfields;
  std::optional<FlankWitness> witness;
  std::vector<DiscriminantCheck> discriminant_checks;
  Conclusion conclusion = Conclusion::Inconclusive;
};

/// The seven d values p(p+2), p(p-2), (p+2)(p-2), -1, -p(p+2), -p(p-2), -(p+2)(p-2).
std::array<i64, 7> subfield_inputs(u64 p);

/// Pairwise distinct modulo squares, and closed under multiplication modulo squares.
bool subfield_lattice_closed(u64 p);

TriquadraticCertificate certify_triquadratic(u64 p, ClassNumberStore* store = nullptr);

/// Uses the full square parts of p+2 and p-2 as witnesses; throws NotFlanked
/// unless both exceed (log p)^A.
std::array<DiscriminantCheck, 3> discriminant_bound_check(u64 p, double A);

/// Same, with caller-supplied witnesses (m^2 | p+2, n^2 | p-2).
std::array<DiscriminantCheck, 3> discriminant_bound_check(u64 p, const FlankWitness& w);

/// Attaches witness data and the K5..K7 discriminant checks.
void attach_discriminant_checks(TriquadraticCertificate& cert, const FlankWitness& w);

Conclusion aggregate(const std::vector<SubfieldRecord>& subfields);

/// Recomputes every evidence item without any cache; empty string when valid.
std::string certificate_defect(const TriquadraticCertificate& cert);

bool verify_certificate(const TriquadraticCertificate& cert);

/// cert-v1 text: "key: value" lines in a fixed order.
std::string serialize(const TriquadraticCertificate& cert);

TriquadraticCertificate parse_certificate(const std::string& text);

}  // namespace prat
