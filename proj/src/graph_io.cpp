#include <accx/graph.hpp>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace accx {

namespace {

constexpr std::array<char, 4> kMagic{'A', 'C', 'C', 'X'};
constexpr std::uint32_t kFlagWeighted = 1u << 0;
constexpr std::uint32_t kFlagReverse = 1u << 1;
constexpr std::uint32_t kFlagDirected = 1u << 2;

template <class T>
void put_le(std::vector<unsigned char>& buf, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const auto bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

template <class T>
void write_array(std::ostream& out, const std::vector<T>& xs) {
  std::vector<unsigned char> buf;
  buf.reserve(xs.size() * sizeof(T));
  for (const auto& x : xs) put_le(buf, x);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* dst, std::size_t n, const char* what) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw FormatError(std::string("truncated file: shape mismatch while reading ") + what);
  }

  template <class T>
  T scalar(const char* what) {
    std::array<unsigned char, sizeof(T)> raw{};
    bytes(raw.data(), raw.size(), what);
    return decode<T>(raw.data());
  }

  template <class T>
  std::vector<T> array(std::uint64_t count, const char* what) {
    constexpr std::uint64_t kChunk = 1u << 20;
    std::vector<T> out;
    std::vector<unsigned char> raw;
    // Grow incrementally so a corrupt count cannot trigger a huge allocation.
    while (out.size() < count) {
      const auto take = std::min<std::uint64_t>(kChunk, count - out.size());
      raw.resize(take * sizeof(T));
      bytes(raw.data(), raw.size(), what);
      for (std::uint64_t i = 0; i < take; ++i) out.push_back(decode<T>(raw.data() + i * sizeof(T)));
    }
    return out;
  }

 private:
  template <class T>
  static T decode(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(p[i]) << (8 * i);
    return std::bit_cast<T>(bits);
  }

  std::istream& in_;
};

}  // namespace

void write_binary(const CsrGraph& g, std::ostream& out) {
  std::vector<unsigned char> head;
  head.insert(head.end(), kMagic.begin(), kMagic.end());
  std::uint32_t flags = 0;
  if (g.weighted()) flags |= kFlagWeighted;
  if (g.has_reverse()) flags |= kFlagReverse;
  if (g.directed()) flags |= kFlagDirected;
  put_le(head, kBinaryVersion);
  put_le(head, flags);
  put_le(head, std::uint64_t{g.vertex_count()});
  put_le(head, std::uint64_t{g.edge_count()});
  out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));
  write_array(out, g.out_offsets());
  write_array(out, g.out_neighbor_array());
  if (g.weighted()) write_array(out, g.out_weight_array());
  if (g.has_reverse()) {
    write_array(out, g.in_offsets());
    write_array(out, g.in_neighbor_array());
    if (g.weighted()) write_array(out, g.in_weight_array());
  }
  if (!out) throw Error("write failed");
}

CsrGraph read_binary(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size(), "magic");
  if (magic != kMagic) throw FormatError("bad magic: not a binary CSR graph");
  const auto version = r.scalar<std::uint32_t>("version");
  if (version != kBinaryVersion) throw FormatError("unsupported version " + std::to_string(version));
  const auto flags = r.scalar<std::uint32_t>("flags");
  if (flags & ~(kFlagWeighted | kFlagReverse | kFlagDirected)) throw FormatError("unknown flag bits");
  const auto n = r.scalar<std::uint64_t>("vertex count");
  const auto m = r.scalar<std::uint64_t>("edge count");
  if (n > std::uint64_t{kInvalidVertex}) throw FormatError("vertex count exceeds 32-bit id space");

  const bool weighted = flags & kFlagWeighted;
  auto out_off = r.array<EdgeId>(n + 1, "out offsets");
  auto out_nbr = r.array<VertexId>(m, "out neighbors");
  std::vector<Weight> out_w = weighted ? r.array<Weight>(m, "out weights") : std::vector<Weight>{};
  std::vector<EdgeId> in_off;
  std::vector<VertexId> in_nbr;
  std::vector<Weight> in_w;
  if (flags & kFlagReverse) {
    in_off = r.array<EdgeId>(n + 1, "in offsets");
    in_nbr = r.array<VertexId>(m, "in neighbors");
    if (weighted) in_w = r.array<Weight>(m, "in weights");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("shape mismatch: trailing bytes after graph");
  return CsrGraph::from_parts(n, flags & kFlagDirected, weighted, std::move(out_off), std::move(out_nbr),
                              std::move(out_w), std::move(in_off), std::move(in_nbr), std::move(in_w));
}

void write_binary_file(const CsrGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_binary(g, out);
}

CsrGraph read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_binary(in);
}

bool is_binary_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  return in.gcount() == 4 && magic == kMagic;
}

}  // namespace accx
