#include "p2race/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "p2race/errors.hpp"
#include "p2race/parallel.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;

// Plain odd-only sieve for the base primes up to n (inclusive).
std::vector<u64> simple_sieve(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  std::vector<std::uint8_t> composite((n - 1) / 2 + 1, 0);  // slot i <-> 2i+1
  for (u64 v = 3; v * v <= n; v += 2) {
    if (composite[v / 2]) continue;
    for (u64 w = v * v; w <= n; w += 2 * v) composite[w / 2] = 1;
  }
  for (u64 v = 3; v <= n; v += 2) {
    if (!composite[v / 2]) primes.push_back(v);
  }
  return primes;
}

// Over-estimate of pi(x) for sizing and budget checks.
u64 prime_count_upper(u64 x) {
  if (x < 100) return 30;
  double lx = std::log((double)x);
  return (u64)((double)x / lx * (1.0 + 1.3 / lx)) + 16;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = (char)((v >> (8 * i)) & 0xff);
  out.write(buf, 4);
}

void put_u64(std::ofstream& out, u64 v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = (char)((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

void put_varint(std::ofstream& out, u64 v) {
  while (v >= 0x80) {
    out.put((char)(v | 0x80));
    v >>= 7;
  }
  out.put((char)v);
}

bool get_u32(std::ifstream& in, std::uint32_t& v) {
  char buf[4];
  if (!in.read(buf, 4)) return false;
  v = 0;
  for (int i = 0; i < 4; ++i) v |= (std::uint32_t)(std::uint8_t)buf[i] << (8 * i);
  return true;
}

bool get_u64(std::ifstream& in, u64& v) {
  char buf[8];
  if (!in.read(buf, 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= (u64)(std::uint8_t)buf[i] << (8 * i);
  return true;
}

bool get_varint(std::ifstream& in, u64& v) {
  v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    int c = in.get();
    if (c == EOF) return false;
    v |= (u64)(c & 0x7f) << shift;
    if (!(c & 0x80)) return true;
  }
  return false;  // over-long encoding
}

constexpr char kCacheMagic[8] = {'P', '2', 'R', 'P', 'R', 'I', 'M', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

std::size_t PrimeTable::index_after(u64 x) const {
  return (std::size_t)(std::upper_bound(primes.begin(), primes.end(), x) -
                       primes.begin());
}

PrimeTable build_prime_table(u64 limit, const SieveOptions& opts) {
  if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");

  const unsigned threads = resolve_threads(opts.threads);
  const u64 projected =
      prime_count_upper(limit) * sizeof(u64) + (u64)threads * opts.segment_bytes;
  if (projected > opts.memory_budget_bytes) {
    throw ResourceError("prime table for limit " + std::to_string(limit) +
                        " needs ~" + std::to_string(projected >> 20) +
                        " MiB, over the " +
                        std::to_string(opts.memory_budget_bytes >> 20) +
                        " MiB budget");
  }

  u64 sqrt_limit = (u64)std::sqrt((double)limit);
  while (sqrt_limit * sqrt_limit > limit) --sqrt_limit;
  while ((sqrt_limit + 1) * (sqrt_limit + 1) <= limit) ++sqrt_limit;
  const std::vector<u64> base = simple_sieve(sqrt_limit);

  PrimeTable table;
  table.limit = limit;
  if (limit < 3) {
    table.primes = {2};
    return table;
  }

  // Odd-only segments: segment_bytes of bitset spans 16 * segment_bytes
  // integers.  Workers claim segment indices from a shared counter and write
  // into per-segment slots, so assembly order is fixed by index.
  const u64 span = opts.segment_bytes * 16;
  const u64 first = 3;
  const u64 segments = (limit - first) / span + 1;
  std::vector<std::vector<u64>> found((std::size_t)segments);
  std::atomic<u64> next_segment{0};

  auto worker = [&]() {
    std::vector<u64> bits;
    while (true) {
      u64 s = next_segment.fetch_add(1);
      if (s >= segments) return;
      const u64 lo = first + s * span;
      const u64 hi = std::min(limit, lo + span - 1);
      const u64 slots = (hi - lo) / 2 + 1;  // odd numbers in [lo, hi]
      bits.assign((std::size_t)((slots + 63) / 64), 0);
      for (u64 p : base) {
        if (p == 2) continue;
        if (p * p > hi) break;
        u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        if ((start & 1) == 0) start += p;
        for (u64 v = start; v <= hi; v += 2 * p) {
          u64 slot = (v - lo) / 2;
          bits[(std::size_t)(slot / 64)] |= 1ULL << (slot % 64);
        }
      }
      auto& out = found[(std::size_t)s];
      out.reserve((std::size_t)(slots / 4 + 8));
      for (u64 slot = 0; slot < slots; ++slot) {
        if (!(bits[(std::size_t)(slot / 64)] >> (slot % 64) & 1))
          out.push_back(lo + 2 * slot);
      }
    }
  };

  if (threads <= 1 || segments == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    unsigned n_workers = (unsigned)std::min<u64>(threads, segments);
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t total = 1;
  for (const auto& seg : found) total += seg.size();
  table.primes.reserve(total);
  table.primes.push_back(2);
  for (const auto& seg : found)
    table.primes.insert(table.primes.end(), seg.begin(), seg.end());
  return table;
}

std::uint64_t prime_count(const PrimeTable& table, u64 x) {
  if (x > table.limit) {
    throw OutOfRangeError("prime_count(" + std::to_string(x) +
                          ") exceeds sieve limit " +
                          std::to_string(table.limit));
  }
  return table.index_after(x);
}

double prime_reciprocal_sum(const PrimeTable& table, u64 x) {
  if (x > table.limit) {
    throw OutOfRangeError("prime_reciprocal_sum(" + std::to_string(x) +
                          ") exceeds sieve limit " +
                          std::to_string(table.limit));
  }
  KahanSum acc;
  std::size_t end = table.index_after(x);
  for (std::size_t i = 0; i < end; ++i) acc.add(1.0 / (double)table.primes[i]);
  return acc.value();
}

double prime_log_sum(const PrimeTable& table, u64 x) {
  if (x > table.limit) {
    throw OutOfRangeError("prime_log_sum(" + std::to_string(x) +
                          ") exceeds sieve limit " +
                          std::to_string(table.limit));
  }
  KahanSum acc;
  std::size_t end = table.index_after(x);
  for (std::size_t i = 0; i < end; ++i) {
    double p = (double)table.primes[i];
    acc.add(std::log(p) / p);
  }
  return acc.value();
}

void save_prime_table(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open cache file for writing: " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic));
  put_u32(out, kCacheVersion);
  put_u64(out, table.limit);
  put_u64(out, table.primes.size());
  u64 prev = 0;
  for (u64 p : table.primes) {
    put_varint(out, p - prev);
    prev = p;
  }
  out.flush();
  if (!out) throw Error("write failed for cache file: " + path.string());
}

PrimeTable load_prime_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open cache file: " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCacheMagic, 8) != 0)
    throw CacheFormatError("not a prime cache file: " + path.string());
  std::uint32_t version = 0;
  if (!get_u32(in, version))
    throw CacheFormatError("truncated cache header: " + path.string());
  if (version != kCacheVersion)
    throw CacheFormatError("unsupported cache version " +
                           std::to_string(version) + " in " + path.string());
  PrimeTable table;
  u64 count = 0;
  if (!get_u64(in, table.limit) || !get_u64(in, count))
    throw CacheFormatError("truncated cache header: " + path.string());
  table.primes.reserve((std::size_t)count);
  u64 prev = 0;
  for (u64 i = 0; i < count; ++i) {
    u64 gap = 0;
    if (!get_varint(in, gap) || (i > 0 && gap == 0))
      throw CacheFormatError("corrupt cache body: " + path.string());
    prev += gap;
    table.primes.push_back(prev);
  }
  if (!table.primes.empty() && table.primes.back() > table.limit)
    throw CacheFormatError("cache body exceeds declared limit: " + path.string());
  if (in.peek() != EOF)
    throw CacheFormatError("trailing data in cache file: " + path.string());
  return table;
}

}  // namespace p2race
