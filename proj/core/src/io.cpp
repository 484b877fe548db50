#include "clockxy/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace clockxy {

namespace {

constexpr char kMagic[4] = {'C', 'X', 'Y', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i64(std::string& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}
void put_f64(std::string& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(bytes(4)); }
  std::int64_t i64() { return static_cast<std::int64_t>(bytes(8)); }
  double f64() {
    std::uint64_t u = bytes(8);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
  }
  void raw(char* out, std::size_t n) {
    if (pos_ + n > data_.size()) throw io_corrupt_error("field file truncated");
    std::memcpy(out, data_.data() + pos_, n);
    pos_ += n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::uint64_t bytes(int n) {
    if (pos_ + n > data_.size()) throw io_corrupt_error("field file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += n;
    return v;
  }
  std::string data_;
  std::size_t pos_ = 0;
};

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

nlohmann::json shape_to_json(const Shape& s) {
  nlohmann::json j;
  switch (s.kind()) {
    case Shape::Kind::square:
      j = {{"kind", "square"}, {"origin", {s.p0().x, s.p0().y}}, {"side", s.extent()}};
      break;
    case Shape::Kind::ball:
      j = {{"kind", "ball"}, {"center", {s.p0().x, s.p0().y}}, {"radius", s.extent()}};
      break;
    case Shape::Kind::rectangle:
      j = {{"kind", "rectangle"}, {"lo", {s.p0().x, s.p0().y}}, {"hi", {s.p1().x, s.p1().y}}};
      break;
  }
  return j;
}

Shape shape_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind");
  if (kind == "square") {
    auto o = j.at("origin");
    return Shape::square({o[0], o[1]}, j.at("side"));
  }
  if (kind == "ball") {
    auto c = j.at("center");
    return Shape::ball({c[0], c[1]}, j.at("radius"));
  }
  if (kind == "rectangle") {
    auto lo = j.at("lo");
    auto hi = j.at("hi");
    return Shape::rectangle({lo[0], lo[1]}, {hi[0], hi[1]});
  }
  throw io_corrupt_error("field file: unknown shape kind '" + kind + "'");
}

std::uint8_t shape_tag(const Shape& s) { return static_cast<std::uint8_t>(s.kind()); }

SpinField rebuild(const Shape& shape, double eps, int n_states, std::int64_t ix0,
                  std::int64_t iy0, std::int64_t nx, std::int64_t ny,
                  std::vector<std::int32_t> states) {
  DomainPtr domain = build_domain(shape, eps);
  if (domain->ix0() != ix0 || domain->iy0() != iy0 || domain->nx() != nx ||
      domain->ny() != ny)
    throw io_dimension_error("field file: domain window does not match the stored shape");
  if (static_cast<std::size_t>(domain->site_count()) != states.size())
    throw io_dimension_error("field file: site count does not match the stored shape");
  for (std::int32_t s : states) {
    if (s < 0 || s >= n_states)
      throw io_dimension_error("field file: state index out of range for n_states");
  }
  SpinField f;
  f.domain = std::move(domain);
  f.circle = DiscreteCircle::with_states(n_states);
  f.states = std::move(states);
  return f;
}

}  // namespace

void save_field(const SpinField& field, const std::string& path) {
  const auto& dom = *field.domain;
  if (is_json_path(path)) {
    nlohmann::json j;
    j["format_version"] = kVersion;
    j["epsilon"] = dom.epsilon();
    j["n_states"] = field.circle.n_states;
    j["shape"] = shape_to_json(dom.shape());
    j["origin"] = {dom.ix0(), dom.iy0()};
    j["dims"] = {dom.nx(), dom.ny()};
    j["states"] = field.states;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << j.dump() << "\n";
    return;
  }

  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, kVersion);
  const Shape& s = dom.shape();
  buf.push_back(static_cast<char>(shape_tag(s)));
  put_f64(buf, s.p0().x);
  put_f64(buf, s.p0().y);
  put_f64(buf, s.kind() == Shape::Kind::rectangle ? s.p1().x : s.extent());
  put_f64(buf, s.kind() == Shape::Kind::rectangle ? s.p1().y : 0.0);
  put_f64(buf, dom.epsilon());
  put_u32(buf, static_cast<std::uint32_t>(field.circle.n_states));
  put_i64(buf, dom.ix0());
  put_i64(buf, dom.iy0());
  put_i64(buf, dom.nx());
  put_i64(buf, dom.ny());
  put_i64(buf, static_cast<std::int64_t>(field.states.size()));
  for (std::int32_t st : field.states) put_u32(buf, static_cast<std::uint32_t>(st));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

SpinField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (is_json_path(path)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(data);
    } catch (const nlohmann::json::exception&) {
      throw io_corrupt_error("field file: invalid JSON payload");
    }
    try {
      std::uint32_t version = j.at("format_version");
      if (version != kVersion)
        throw io_version_error("field file: unsupported format version");
      Shape shape = shape_from_json(j.at("shape"));
      std::vector<std::int32_t> states = j.at("states").get<std::vector<std::int32_t>>();
      auto origin = j.at("origin");
      auto dims = j.at("dims");
      return rebuild(shape, j.at("epsilon"), j.at("n_states"), origin[0], origin[1],
                     dims[0], dims[1], std::move(states));
    } catch (const nlohmann::json::exception&) {
      throw io_corrupt_error("field file: missing or malformed JSON fields");
    }
  }

  Reader r(std::move(data));
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw io_corrupt_error("field file: bad magic");
  std::uint32_t version = r.u32();
  if (version != kVersion) throw io_version_error("field file: unsupported format version");
  char tag;
  r.raw(&tag, 1);
  double a = r.f64(), b = r.f64(), c = r.f64(), d = r.f64();
  Shape shape = Shape::square({0, 0}, 1);
  switch (tag) {
    case 0: shape = Shape::square({a, b}, c); break;
    case 1: shape = Shape::ball({a, b}, c); break;
    case 2: shape = Shape::rectangle({a, b}, {c, d}); break;
    default: throw io_corrupt_error("field file: unknown shape tag");
  }
  double eps = r.f64();
  std::uint32_t n_states = r.u32();
  std::int64_t ix0 = r.i64(), iy0 = r.i64(), nx = r.i64(), ny = r.i64();
  std::int64_t count = r.i64();
  if (count < 0 || r.remaining() != static_cast<std::size_t>(count) * 4)
    throw io_corrupt_error("field file: payload size mismatch");
  std::vector<std::int32_t> states(static_cast<std::size_t>(count));
  for (auto& st : states) st = static_cast<std::int32_t>(r.u32());
  return rebuild(shape, eps, static_cast<int>(n_states), ix0, iy0, nx, ny,
                 std::move(states));
}

}  // namespace clockxy
