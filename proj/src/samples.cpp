#include "isinglearn/samples.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "isinglearn/errors.hpp"

namespace ising {

void SampleSet::check_p() const {
  if (p_ < 1) throw DataError("samples: p must be >= 1, got " + std::to_string(p_));
}

SampleSet::SampleSet(int p, std::int64_t n, std::vector<std::int8_t> spins)
    : p_(p), n_(n), spins_(std::move(spins)) {
  check_p();
  if (n_ < 0) throw DataError("samples: n must be >= 0");
  if (spins_.size() != static_cast<std::size_t>(n_) * p_)
    throw DataError("samples: spin buffer has " + std::to_string(spins_.size()) +
                    " entries, expected " + std::to_string(n_ * p_));
  for (std::int8_t s : spins_)
    if (s != 1 && s != -1) throw DataError("samples: entry " + std::to_string(s) + " is not +-1");
}

SampleSet SampleSet::head(std::int64_t n_head) const {
  if (n_head < 0 || n_head > n_) throw DataError("samples: bad head length");
  return SampleSet(p_, n_head,
                   std::vector<std::int8_t>(spins_.begin(), spins_.begin() + n_head * p_));
}

void write_samples_text(const SampleSet& s, std::ostream& out) {
  out << s.p() << ' ' << s.n() << '\n';
  for (std::int64_t r = 0; r < s.n(); ++r) {
    for (int k = 0; k < s.p(); ++k) {
      if (k) out << ' ';
      out << static_cast<int>(s.at(r, k));
    }
    out << '\n';
  }
}

SampleSet read_samples_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("samples text: missing header line");
  std::istringstream header(line);
  std::int64_t p = 0, n = 0;
  if (!(header >> p >> n)) throw DataError("samples text: header must be \"p n\"");
  std::string extra;
  if (header >> extra) throw DataError("samples text: trailing token in header: " + extra);
  if (p < 1 || p > (1 << 24)) throw DataError("samples text: bad p in header");
  if (n < 0) throw DataError("samples text: bad n in header");

  std::vector<std::int8_t> spins;
  spins.reserve(static_cast<std::size_t>(n) * p);
  std::int64_t rows = 0;
  std::int64_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::int64_t col = 0;
    int v = 0;
    while (row >> v) {
      ++col;
      if (v != 1 && v != -1)
        throw DataError("samples text: line " + std::to_string(lineno) + " field " +
                        std::to_string(col) + ": entry " + std::to_string(v) + " is not +-1");
      spins.push_back(static_cast<std::int8_t>(v));
    }
    if (col == 0) continue;  // blank line
    if (!row.eof())
      throw DataError("samples text: line " + std::to_string(lineno) + ": non-integer token");
    if (col != p)
      throw DataError("samples text: line " + std::to_string(lineno) + " has " +
                      std::to_string(col) + " entries, expected " + std::to_string(p));
    ++rows;
  }
  if (rows != n)
    throw DataError("samples text: header promised " + std::to_string(n) + " rows, found " +
                    std::to_string(rows));
  return SampleSet(static_cast<int>(p), n, std::move(spins));
}

namespace {

constexpr char kMagic[4] = {'I', 'S', 'N', 'G'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw DataError(std::string("samples binary: truncated ") + what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_samples_binary(const SampleSet& s, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(s.p()));
  put_u32(out, static_cast<std::uint32_t>(s.n()));
  const int row_bytes = (s.p() + 7) / 8;
  std::vector<char> buf(row_bytes);
  for (std::int64_t r = 0; r < s.n(); ++r) {
    std::fill(buf.begin(), buf.end(), 0);
    for (int k = 0; k < s.p(); ++k)
      if (s.at(r, k) > 0) buf[k >> 3] |= static_cast<char>(1 << (k & 7));
    out.write(buf.data(), row_bytes);
  }
}

SampleSet read_samples_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("samples binary: bad magic, expected ISNG");
  const std::uint32_t p = get_u32(in, "p field");
  const std::uint32_t n = get_u32(in, "n field");
  if (p < 1 || p > (1u << 24)) throw DataError("samples binary: bad p=" + std::to_string(p));
  const int row_bytes = (static_cast<int>(p) + 7) / 8;
  std::vector<std::int8_t> spins;
  spins.reserve(static_cast<std::size_t>(n) * p);
  std::vector<unsigned char> buf(row_bytes);
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), row_bytes))
      throw DataError("samples binary: truncated at row " + std::to_string(r));
    for (std::uint32_t k = 0; k < p; ++k)
      spins.push_back((buf[k >> 3] >> (k & 7)) & 1 ? std::int8_t{1} : std::int8_t{-1});
    const int pad_from = static_cast<int>(p);
    for (int k = pad_from; k < row_bytes * 8; ++k)
      if ((buf[k >> 3] >> (k & 7)) & 1)
        throw DataError("samples binary: nonzero padding bit in row " + std::to_string(r));
  }
  char extra;
  if (in.read(&extra, 1)) throw DataError("samples binary: trailing bytes after last row");
  return SampleSet(static_cast<int>(p), n, std::move(spins));
}

void write_samples_file(const SampleSet& s, const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw DataError("cannot open for writing: " + path);
  if (binary)
    write_samples_binary(s, out);
  else
    write_samples_text(s, out);
  if (!out) throw DataError("write failed: " + path);
}

SampleSet read_samples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::memcmp(magic, kMagic, 4) == 0) return read_samples_binary(in);
  return read_samples_text(in);
}

SampleHistogram SampleHistogram::build(const SampleSet& s) {
  SampleHistogram h;
  h.p_ = s.p();
  h.words_ = (s.p() + 63) / 64;
  h.n_ = s.n();

  const std::int64_t n = s.n();
  const int p = s.p();
  const int words = h.words_;
  std::vector<std::uint64_t> packed(static_cast<std::size_t>(n) * words, 0);
  for (std::int64_t r = 0; r < n; ++r) {
    std::uint64_t* row = packed.data() + r * words;
    for (int k = 0; k < p; ++k)
      if (s.at(r, k) > 0) row[k >> 6] |= std::uint64_t{1} << (k & 63);
  }

  if (p <= 20) {
    // Dense counting: pattern value itself is the bucket.
    std::vector<std::uint64_t> counts(std::size_t{1} << p, 0);
    for (std::int64_t r = 0; r < n; ++r) ++counts[packed[r]];
    for (std::uint64_t v = 0; v < counts.size(); ++v) {
      if (counts[v] == 0) continue;
      h.bits_.push_back(v);
      h.weights_.push_back(counts[v]);
    }
    return h;
  }

  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](std::int64_t a, std::int64_t b) {
    const std::uint64_t* ra = packed.data() + a * words;
    const std::uint64_t* rb = packed.data() + b * words;
    for (int w = words - 1; w >= 0; --w) {
      if (ra[w] != rb[w]) return ra[w] < rb[w];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  auto row_eq = [&](std::int64_t a, std::int64_t b) {
    return std::memcmp(packed.data() + a * words, packed.data() + b * words,
                       words * sizeof(std::uint64_t)) == 0;
  };
  for (std::int64_t k = 0; k < n;) {
    std::int64_t j = k + 1;
    while (j < n && row_eq(order[k], order[j])) ++j;
    const std::uint64_t* row = packed.data() + order[k] * words;
    h.bits_.insert(h.bits_.end(), row, row + words);
    h.weights_.push_back(static_cast<std::uint64_t>(j - k));
    k = j;
  }
  return h;
}

}  // namespace ising
