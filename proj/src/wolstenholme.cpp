#include "gdet/wolstenholme.hpp"

#include <fstream>
#include <stdexcept>

#include "gdet/compute.hpp"
#include "gdet/number_theory.hpp"
#include "gdet/partitions.hpp"

namespace gdet {
namespace {

void require_prime(std::uint64_t p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

u128 totient_of_power(std::uint64_t p, unsigned e) { return checked_power(p, e - 1) * (p - 1); }

template <class Ring>
u128 central_binom_in(const Ring& ring, std::uint64_t p, unsigned e) {
  auto num = ring.one();
  auto den = ring.one();
  for (std::uint64_t i = 1; i < p; ++i) {
    num = ring.mul(num, ring.from_u64(p + i));
    den = ring.mul(den, ring.from_u64(i));
  }
  const auto inv = ring.pow(den, totient_of_power(p, e) - 1);
  return ring.lift(ring.mul(num, inv));
}

template <class Ring>
u128 harmonic_in(const Ring& ring, std::uint64_t p, unsigned e) {
  // running fraction num/den of 1 + 1/2 + ... + 1/i
  auto num = ring.from_u64(0);
  auto den = ring.one();
  for (std::uint64_t i = 1; i < p; ++i) {
    const auto x = ring.from_u64(i);
    num = ring.add(ring.mul(num, x), den);
    den = ring.mul(den, x);
  }
  const auto inv = ring.pow(den, totient_of_power(p, e) - 1);
  return ring.lift(ring.mul(num, inv));
}

template <class F>
u128 with_ring(std::uint64_t p, unsigned e, F&& f) {
  const u128 m = checked_power(p, e);
  if (m < (u128{1} << 63)) return f(Mod64Ring(static_cast<std::uint64_t>(m)));
  return f(Mod128Ring(m));
}

}  // namespace

u128 central_binom_mod(std::uint64_t p, unsigned e) {
  require_prime(p, "central_binom_mod");
  if (e < 1 || e > 4) throw std::invalid_argument("central_binom_mod: exponent must be in [1, 4]");
  return with_ring(p, e, [&](const auto& ring) { return central_binom_in(ring, p, e); });
}

u128 harmonic_mod(std::uint64_t p, unsigned e) {
  require_prime(p, "harmonic_mod");
  if (e < 1 || e > 4) throw std::invalid_argument("harmonic_mod: exponent must be in [1, 4]");
  return with_ring(p, e, [&](const auto& ring) { return harmonic_in(ring, p, e); });
}

BigInt n_theta_via_identity(std::uint64_t p) {
  require_prime(p, "n_theta_via_identity");
  BigInt sum = binomial_big(2 * p - 1, p - 1);
  sum += p - 1;
  BigInt q, r;
  BigInt pp;
  mpz_set_ui(pp.get_mpz_t(), p);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sum.get_mpz_t(), pp.get_mpz_t());
  if (r != 0) throw std::logic_error("n_theta_via_identity: p does not divide p - 1 + C(2p-1, p-1)");
  return q;
}

PrimeReport classify_prime(std::uint64_t p, bool with_harmonic) {
  require_prime(p, "classify_prime");
  PrimeReport rep;
  rep.p = p;
  const u128 p2 = checked_power(p, 2), p3 = checked_power(p, 3), p4 = checked_power(p, 4);
  rep.residue_p4 = central_binom_mod(p, 4);
  rep.residue_p3 = rep.residue_p4 % p3;
  rep.residue_p2 = rep.residue_p4 % p2;
  rep.n_theta_residue_p3 = ((rep.residue_p4 + p - 1) % p4) / p;
  rep.is_wolstenholme_prime = rep.residue_p4 == 1;
  rep.satisfies_wolstenholme_theorem = rep.residue_p3 == 1;
  if (with_harmonic || rep.is_wolstenholme_prime) rep.harmonic_residue_p3 = harmonic_mod(p, 3);
  if (p < 5) {
    rep.note = "N(Theta(C_" + std::to_string(p) + ")) = " + u128_to_string(rep.n_theta_residue_p3) +
               "; p < 5 is outside the Wolstenholme theorems";
  }
  return rep;
}

std::optional<ScanCheckpoint> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  ScanCheckpoint cp;
  if (!(in >> cp.last_prime >> cp.count_found)) {
    throw std::runtime_error("read_checkpoint: malformed checkpoint " + path.string());
  }
  return cp;
}

void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << cp.last_prime << ' ' << cp.count_found << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write_checkpoint: cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("write_checkpoint: cannot replace " + path.string() + ": " + ec.message());
}

ScanResult scan_range(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options) {
  if (lo < 2 || hi < lo) throw std::invalid_argument("scan_range: need 2 <= lo <= hi");
  ScanResult result;
  result.lo = lo;
  result.hi = hi;
  std::uint64_t start = lo;
  std::uint64_t found_before = 0;
  if (options.checkpoint && options.resume) {
    if (auto cp = read_checkpoint(*options.checkpoint)) {
      result.resumed_from = cp;
      start = std::max(start, cp->last_prime + 1);
      found_before = cp->count_found;
    }
  }
  if (options.checkpoint) {
    // fail early on an unwritable path
    write_checkpoint(*options.checkpoint, {start > lo ? start - 1 : 0, found_before});
  }
  const auto primes = start <= hi ? primes_in_range(start, hi) : std::vector<std::uint64_t>{};
  const std::size_t chunk = std::max<std::size_t>(1, options.checkpoint_every);
  std::vector<PrimeReport> batch;
  for (std::size_t begin = 0; begin < primes.size(); begin += chunk) {
    const std::size_t count = std::min(chunk, primes.size() - begin);
    batch.assign(count, PrimeReport{});
    parallel_for(count, options.jobs, [&](std::size_t i, std::size_t) {
      const std::size_t index = begin + i;
      const bool sampled = options.harmonic_sample != 0 && index % options.harmonic_sample == 0;
      batch[i] = classify_prime(primes[index], sampled);
    });
    for (auto& rep : batch) {
      if (rep.is_wolstenholme_prime) result.wolstenholme_primes.push_back(rep.p);
      if (rep.p >= 5 && !rep.satisfies_wolstenholme_theorem) ++result.theorem_failures;
      result.reports.push_back(std::move(rep));
    }
    if (options.checkpoint) {
      write_checkpoint(*options.checkpoint,
                       {result.reports.back().p, found_before + result.wolstenholme_primes.size()});
    }
    if (options.progress) options.progress(result.reports.back().p, begin + count, primes.size());
  }
  return result;
}

}  // namespace gdet
