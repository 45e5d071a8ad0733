// Binary container for cached sector spectra.
//
// Layout (little-endian):
//   magic   "CSPNCACH"            8 bytes
//   version u32                   currently 1
//   count   u32
//   entries, each:
//     N u32, M u32, B f64
//     nA u32, A f64[nA], Delta f64[nA]
//     dim u32, values f64[dim], vectors f64[dim*dim] column-major
//     checksum u64 (FNV-1a over the entry payload bytes above)
// Doubles are stored as raw IEEE-754 bytes, so a save/load cycle is bit-exact.

#include "cspin/ed.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace cspin {

namespace {

constexpr char kMagic[8] = {'C', 'S', 'P', 'N', 'C', 'A', 'C', 'H'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::vector<char>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

void append(std::vector<char>& buf, const void* data, std::size_t n) {
  const char* p = static_cast<const char*>(data);
  buf.insert(buf.end(), p, p + n);
}

template <typename T>
void append_value(std::vector<char>& buf, T v) {
  append(buf, &v, sizeof(T));
}

template <typename T>
T read_value(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("spectrum cache: truncated file");
  return v;
}

void read_doubles(std::istream& in, double* out, std::size_t n) {
  in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw std::runtime_error("spectrum cache: truncated file");
}

}  // namespace

void SpectrumCache::save(const std::string& path) const {
  std::lock_guard lock(mutex_);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("spectrum cache: cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  std::uint32_t version = kVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  std::uint32_t count = static_cast<std::uint32_t>(entries_.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));

  for (const auto& [key, spec] : entries_) {
    std::vector<char> payload;
    append_value<std::uint32_t>(payload, static_cast<std::uint32_t>(key.N));
    append_value<std::uint32_t>(payload, static_cast<std::uint32_t>(key.M));
    append_value<double>(payload, key.B);
    append_value<std::uint32_t>(payload, static_cast<std::uint32_t>(key.A.size()));
    append(payload, key.A.data(), key.A.size() * sizeof(double));
    append(payload, key.Delta.data(), key.Delta.size() * sizeof(double));
    const std::uint32_t dim = static_cast<std::uint32_t>(spec->values.size());
    append_value<std::uint32_t>(payload, dim);
    append(payload, spec->values.data(), dim * sizeof(double));
    append(payload, spec->vectors.data(), std::size_t{dim} * dim * sizeof(double));
    const std::uint64_t sum = fnv1a(payload);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
  }
  if (!out) throw std::runtime_error("spectrum cache: write failure on " + path);
}

void SpectrumCache::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("spectrum cache: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("spectrum cache: bad magic in " + path);
  if (read_value<std::uint32_t>(in) != kVersion)
    throw std::runtime_error("spectrum cache: unsupported version in " + path);
  const std::uint32_t count = read_value<std::uint32_t>(in);

  for (std::uint32_t e = 0; e < count; ++e) {
    Key key;
    key.N = static_cast<int>(read_value<std::uint32_t>(in));
    key.M = static_cast<int>(read_value<std::uint32_t>(in));
    key.B = read_value<double>(in);
    const std::uint32_t nA = read_value<std::uint32_t>(in);
    key.A.resize(nA);
    key.Delta.resize(nA);
    read_doubles(in, key.A.data(), nA);
    read_doubles(in, key.Delta.data(), nA);
    const std::uint32_t dim = read_value<std::uint32_t>(in);
    auto spec = std::make_shared<SectorSpectrum>();
    spec->values.resize(dim);
    spec->vectors.resize(dim, dim);
    read_doubles(in, spec->values.data(), dim);
    read_doubles(in, spec->vectors.data(), std::size_t{dim} * dim);

    // Recompute the checksum over a re-serialized payload.
    std::vector<char> payload;
    append_value<std::uint32_t>(payload, static_cast<std::uint32_t>(key.N));
    append_value<std::uint32_t>(payload, static_cast<std::uint32_t>(key.M));
    append_value<double>(payload, key.B);
    append_value<std::uint32_t>(payload, nA);
    append(payload, key.A.data(), key.A.size() * sizeof(double));
    append(payload, key.Delta.data(), key.Delta.size() * sizeof(double));
    append_value<std::uint32_t>(payload, dim);
    append(payload, spec->values.data(), dim * sizeof(double));
    append(payload, spec->vectors.data(), std::size_t{dim} * dim * sizeof(double));
    if (read_value<std::uint64_t>(in) != fnv1a(payload))
      throw std::runtime_error("spectrum cache: checksum mismatch in " + path);

    insert(key, std::move(spec));
  }
}

}  // namespace cspin
