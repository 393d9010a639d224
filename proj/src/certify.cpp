#include "prat/certify.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <numeric>
#include <sstream>

#include "prat/search.hpp"

namespace prat {

namespace {

constexpr const char* kLabels[7] = {"K1", "K2", "K3", "K4", "K5", "K6", "K7"};

constexpr const char* kImplication =
    "certified => every quadratic subfield is p-rational and p does not divide [K:Q] = 8 "
    "=> every cyclic subfield of the abelian field K is p-rational => K is p-rational";

void require_supported(u64 p) {
  if (p < 5 || !is_prime(p)) throw Error(Errc::UnsupportedPrime, "p must be a prime >= 5, got " + std::to_string(p));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

const char* conclusion_name(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::Certified: return "certified";
    case Conclusion::Failed: return "failed";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::array<i64, 7> subfield_inputs(u64 p) {
  const i64 q = static_cast<i64>(p);
  const i64 plus = q * (q + 2), minus = q * (q - 2), flank = (q + 2) * (q - 2);
  return {plus, minus, flank, -1, -plus, -minus, -flank};
}

bool subfield_lattice_closed(u64 p) {
  std::array<i64, 7> kernels{};
  const auto inputs = subfield_inputs(p);
  for (int i = 0; i < 7; ++i) kernels[i] = squarefree_kernel(inputs[i]);
  auto contains = [&](__int128 k) {
    for (i64 x : kernels)
      if (x == k) return true;
    return false;
  };
  for (int i = 0; i < 7; ++i) {
    if (kernels[i] == 1) return false;
    for (int j = i + 1; j < 7; ++j) {
      if (kernels[i] == kernels[j]) return false;
      const i64 a = kernels[i], b = kernels[j];
      const i64 g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
      __int128 prod = static_cast<__int128>(a / g) * (b / g);
      if (!contains(prod)) return false;
    }
  }
  return true;
}

Conclusion aggregate(const std::vector<SubfieldRecord>& subfields) {
  bool all_proved = subfields.size() == 7;
  bool any_refuted = false;
  for (const auto& s : subfields) {
    all_proved = all_proved && s.verdict.status == Status::Proved;
    any_refuted = any_refuted || s.verdict.status == Status::Refuted;
  }
  if (all_proved) return Conclusion::Certified;
  return any_refuted ? Conclusion::Failed : Conclusion::Inconclusive;
}

TriquadraticCertificate certify_triquadratic(u64 p, ClassNumberStore* store) {
  require_supported(p);
  TriquadraticCertificate cert;
  cert.p = p;
  const auto inputs = subfield_inputs(p);
  std::vector<std::future<PRationalityVerdict>> pending;
  for (i64 d : inputs)
    pending.push_back(std::async(std::launch::async, [d, p, store] { return p_rationality(descriptor(d), p, store); }));
  for (int i = 0; i < 7; ++i) cert.subfields.push_back({kLabels[i], inputs[i], pending[i].get()});
  cert.conclusion = aggregate(cert.subfields);
  return cert;
}

std::array<DiscriminantCheck, 3> discriminant_bound_check(u64 p, const FlankWitness& w) {
  require_supported(p);
  const u64 m2 = w.m * w.m, n2 = w.n * w.n;
  const double ll = std::log(std::log(static_cast<double>(p)));
  if (w.m == 0 || w.n == 0 || (p + 2) % m2 != 0 || (p - 2) % n2 != 0 || !power_below(ll, w.A, w.m) ||
      !power_below(ll, w.A, w.n))
    throw Error(Errc::NotFlanked, std::to_string(p) + " is not flanked by (" + std::to_string(w.m) + ", " +
                                      std::to_string(w.n) + ") at A = " + format_double(w.A));
  const auto inputs = subfield_inputs(p);
  const long double logp = std::log(static_cast<long double>(p));
  std::array<DiscriminantCheck, 3> out;
  const int exps[3] = {2, 2, 4};
  for (int i = 0; i < 3; ++i) {
    auto& c = out[i];
    c.label = kLabels[4 + i];
    c.exponent = exps[i];
    const i64 D = descriptor(inputs[4 + i]).discriminant;
    c.abs_discriminant = -D;
    const long double scale = std::pow(logp, static_cast<long double>(exps[i]) * w.A);
    const long double rhs = 4.0L * static_cast<long double>(-inputs[4 + i]);
    c.bound = static_cast<double>(rhs / scale);
    c.holds = static_cast<long double>(c.abs_discriminant) * scale <= rhs;
  }
  return out;
}

std::array<DiscriminantCheck, 3> discriminant_bound_check(u64 p, double A) {
  require_supported(p);
  return discriminant_bound_check(
      p, FlankWitness{square_part(p + 2).square_root_part, square_part(p - 2).square_root_part, A});
}

void attach_discriminant_checks(TriquadraticCertificate& cert, const FlankWitness& w) {
  const auto checks = discriminant_bound_check(cert.p, w);
  cert.witness = w;
  cert.discriminant_checks.assign(checks.begin(), checks.end());
}

namespace {

std::string verdict_defect(const SubfieldRecord& s, u64 p) {
  const auto& v = s.verdict;
  const QuadFieldDescriptor expected = descriptor(s.d_input);
  if (!(v.field == expected)) return s.label + ": field descriptor mismatch";
  if (v.p != p) return s.label + ": verdict prime mismatch";
  const i64 D = expected.discriminant;
  const auto P = static_cast<i64>(p);

  if (expected.signature == Signature::Imaginary) {
    if (!v.bound || !close_rel(*v.bound, louboutin_bound(D), 1e-12)) return s.label + ": bound mismatch";
    if (v.unit || v.local) return s.label + ": imaginary field carries unit evidence";
    if (-D <= kExactDiscriminantLimit) {
      if (v.method != ClassNumberMethod::Forms || !v.class_number) return s.label + ": missing class number";
      if (*v.class_number != class_number_imaginary_oracle(D)) return s.label + ": class number mismatch";
      const Status want = *v.class_number % P != 0 ? Status::Proved : Status::Inconclusive;
      if (v.status != want) return s.label + ": status inconsistent with class number";
    } else {
      if (v.method != ClassNumberMethod::BoundOnly || v.class_number) return s.label + ": expected bound-only evidence";
      const Status want =
          class_number_upper_bound(D) < static_cast<double>(p) ? Status::Proved : Status::Inconclusive;
      if (v.status != want) return s.label + ": status inconsistent with bound";
    }
    return {};
  }

  if (v.bound) return s.label + ": real field carries a bound";
  if (D > kExactDiscriminantLimit) {
    if (v.status != Status::Inconclusive || v.class_number || v.unit) return s.label + ": out-of-range real field";
    return {};
  }
  if (!v.unit || !v.class_number || v.method != ClassNumberMethod::Dirichlet) return s.label + ": missing evidence";
  if (!satisfies_norm_equation(*v.unit) || !(*v.unit == fundamental_unit(expected.kernel)))
    return s.label + ": unit mismatch";
  if (*v.class_number != class_number_real(D, *v.unit)) return s.label + ": class number mismatch";
  if (*v.class_number % P == 0) {
    if (v.status != Status::Refuted || v.local) return s.label + ": status inconsistent with p | h";
    return {};
  }
  if (!v.local || !(*v.local == unit_is_pth_power_locally(expected.kernel, *v.unit, p)))
    return s.label + ": local unit test mismatch";
  const Status want = v.local->some_place_not_power() ? Status::Proved : Status::Refuted;
  if (v.status != want) return s.label + ": status inconsistent with unit test";
  return {};
}

}  // namespace

std::string certificate_defect(const TriquadraticCertificate& cert) {
  try {
    if (cert.schema != kCertificateSchema) return "schema mismatch";
    if (cert.p < 5 || !is_prime(cert.p)) return "p is not a prime >= 5";
    if (cert.subfields.size() != 7) return "expected 7 subfields, found " + std::to_string(cert.subfields.size());
    const auto inputs = subfield_inputs(cert.p);
    for (int i = 0; i < 7; ++i) {
      const auto& s = cert.subfields[i];
      if (s.label != kLabels[i] || s.d_input != inputs[i]) return "subfield " + std::to_string(i + 1) + " mislabelled";
      if (auto defect = verdict_defect(s, cert.p); !defect.empty()) return defect;
    }
    if (cert.conclusion != aggregate(cert.subfields)) return "conclusion does not follow from verdicts";
    if (cert.witness) {
      const auto checks = discriminant_bound_check(cert.p, *cert.witness);
      if (cert.discriminant_checks.size() != 3) return "expected 3 discriminant checks";
      for (int i = 0; i < 3; ++i) {
        const auto& got = cert.discriminant_checks[i];
        const auto& want = checks[i];
        if (got.label != want.label || got.abs_discriminant != want.abs_discriminant || got.exponent != want.exponent ||
            got.holds != want.holds || !close_rel(got.bound, want.bound, 1e-12))
          return "discriminant check " + want.label + " mismatch";
      }
    } else if (!cert.discriminant_checks.empty()) {
      return "discriminant checks without witnesses";
    }
  } catch (const Error& e) {
    return std::string("recomputation failed: ") + e.what();
  }
  return {};
}

bool verify_certificate(const TriquadraticCertificate& cert) { return certificate_defect(cert).empty(); }

std::string serialize(const TriquadraticCertificate& cert) {
  std::ostringstream os;
  os << "schema: " << cert.schema << "\n";
  os << "p: " << cert.p << "\n";
  os << "conclusion: " << conclusion_name(cert.conclusion) << "\n";
  os << "implication: " << kImplication << "\n";
  os << "subfield_count: " << cert.subfields.size() << "\n";
  for (const auto& s : cert.subfields) {
    const auto& v = s.verdict;
    const std::string k = "subfield." + s.label + ".";
    os << k << "d_input: " << s.d_input << "\n";
    os << k << "kernel: " << v.field.kernel << "\n";
    os << k << "discriminant: " << v.field.discriminant << "\n";
    os << k << "signature: " << signature_name(v.field.signature) << "\n";
    os << k << "status: " << status_name(v.status) << "\n";
    os << k << "method: " << method_name(v.method) << "\n";
    os << k << "class_number: " << (v.class_number ? std::to_string(*v.class_number) : "none") << "\n";
    os << k << "bound: " << (v.bound ? format_double(*v.bound) : "none") << "\n";
    if (v.unit) {
      os << k << "unit_u: " << to_decimal(v.unit->u) << "\n";
      os << k << "unit_v: " << to_decimal(v.unit->v) << "\n";
      os << k << "unit_denom: " << v.unit->denom << "\n";
      os << k << "unit_norm: " << v.unit->norm << "\n";
      os << k << "unit_period: " << v.unit->period << "\n";
    }
    if (v.local) {
      os << k << "splitting: " << splitting_name(v.local->splitting) << "\n";
      os << k << "pth_power: ";
      for (std::size_t i = 0; i < v.local->is_pth_power.size(); ++i)
        os << (i ? "," : "") << (v.local->is_pth_power[i] ? 1 : 0);
      os << "\n";
    }
  }
  if (cert.witness) {
    os << "witness.m: " << cert.witness->m << "\n";
    os << "witness.n: " << cert.witness->n << "\n";
    os << "witness.A: " << format_double(cert.witness->A) << "\n";
  }
  for (const auto& c : cert.discriminant_checks) {
    const std::string k = "disc." + c.label + ".";
    os << k << "abs_discriminant: " << c.abs_discriminant << "\n";
    os << k << "log_exponent: " << c.exponent << "\n";
    os << k << "bound: " << format_double(c.bound) << "\n";
    os << k << "holds: " << (c.holds ? "true" : "false") << "\n";
  }
  return os.str();
}

namespace {

i64 parse_i64(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw Error(Errc::ParseError, "bad integer '" + s + "'");
  return v;
}

Status parse_status(const std::string& s) {
  if (s == "proved") return Status::Proved;
  if (s == "refuted") return Status::Refuted;
  if (s == "inconclusive") return Status::Inconclusive;
  throw Error(Errc::ParseError, "bad status '" + s + "'");
}

Splitting parse_splitting(const std::string& s) {
  if (s == "split") return Splitting::Split;
  if (s == "inert") return Splitting::Inert;
  if (s == "ramified") return Splitting::Ramified;
  throw Error(Errc::ParseError, "bad splitting '" + s + "'");
}

Conclusion parse_conclusion(const std::string& s) {
  if (s == "certified") return Conclusion::Certified;
  if (s == "failed") return Conclusion::Failed;
  if (s == "inconclusive") return Conclusion::Inconclusive;
  throw Error(Errc::ParseError, "bad conclusion '" + s + "'");
}

}  // namespace

namespace {

TriquadraticCertificate parse_certificate_unchecked(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> labels;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw Error(Errc::ParseError, "malformed line '" + line + "'");
    const std::string key = line.substr(0, colon);
    kv[key] = line.substr(colon + 2);
    if (key.rfind("subfield.", 0) == 0 && key.size() > 17 && key.compare(key.size() - 8, 8, ".d_input") == 0)
      labels.push_back(key.substr(9, key.size() - 17));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(Errc::ParseError, "missing key '" + key + "'");
    return it->second;
  };

  TriquadraticCertificate cert;
  cert.schema = get("schema");
  cert.p = static_cast<u64>(parse_i64(get("p")));
  cert.conclusion = parse_conclusion(get("conclusion"));
  for (const auto& label : labels) {
    const std::string k = "subfield." + label + ".";
    SubfieldRecord s;
    s.label = label;
    s.d_input = parse_i64(get(k + "d_input"));
    auto& v = s.verdict;
    v.p = cert.p;
    v.field.d_input = s.d_input;
    v.field.kernel = parse_i64(get(k + "kernel"));
    v.field.discriminant = parse_i64(get(k + "discriminant"));
    v.field.signature = get(k + "signature") == "imaginary" ? Signature::Imaginary : Signature::Real;
    v.status = parse_status(get(k + "status"));
    v.method = method_from_name(get(k + "method"));
    if (const auto& h = get(k + "class_number"); h != "none") v.class_number = parse_i64(h);
    if (const auto& b = get(k + "bound"); b != "none") v.bound = std::stod(b);
    if (kv.count(k + "unit_u")) {
      FundamentalUnit u;
      u.kernel = v.field.kernel;
      u.u = BigInt(get(k + "unit_u"));
      u.v = BigInt(get(k + "unit_v"));
      u.denom = static_cast<int>(parse_i64(get(k + "unit_denom")));
      u.norm = static_cast<int>(parse_i64(get(k + "unit_norm")));
      u.period = static_cast<std::size_t>(parse_i64(get(k + "unit_period")));
      v.unit = u;
    }
    if (kv.count(k + "splitting")) {
      LocalPowerTest t;
      t.splitting = parse_splitting(get(k + "splitting"));
      std::istringstream bits(get(k + "pth_power"));
      std::string bit;
      while (std::getline(bits, bit, ',')) t.is_pth_power.push_back(bit == "1");
      v.local = t;
    }
    cert.subfields.push_back(std::move(s));
  }
  if (kv.count("witness.m")) {
    cert.witness = FlankWitness{static_cast<u64>(parse_i64(get("witness.m"))),
                                static_cast<u64>(parse_i64(get("witness.n"))), std::stod(get("witness.A"))};
  }
  for (const char* label : {"K5", "K6", "K7"}) {
    const std::string k = std::string("disc.") + label + ".";
    if (!kv.count(k + "abs_discriminant")) continue;
    DiscriminantCheck c;
    c.label = label;
    c.abs_discriminant = parse_i64(get(k + "abs_discriminant"));
    c.exponent = static_cast<int>(parse_i64(get(k + "log_exponent")));
    c.bound = std::stod(get(k + "bound"));
    c.holds = get(k + "holds") == "true";
    cert.discriminant_checks.push_back(c);
  }
  return cert;
}

}  // namespace

TriquadraticCertificate parse_certificate(const std::string& text) {
  try {
    return parse_certificate_unchecked(text);
  } catch (const std::logic_error& e) {
    throw Error(Errc::ParseError, std::string("bad number in certificate (") + e.what() + ")");
  }
}

}  // namespace prat
