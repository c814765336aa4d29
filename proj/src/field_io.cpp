#include "hnls/field_io.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hnls/errors.hpp"

namespace hnls::io {

namespace {

constexpr std::array<char, 8> kMagic{'H', 'N', 'L', 'S', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("truncated snapshot");
  return value;
}

// std::stod rejects subnormals, which far gaussian tails produce; strtod keeps them.
double parse_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str()) throw IoError("not a number: '" + text + "'");
  return v;
}

}  // namespace

void write_csv(const RadialField& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  out << "# geometry=" << to_string(f.geometry()) << " r_max=" << f.grid().r_max
      << " n=" << f.grid().n << "\n";
  out << "r,re_u,im_u\n";
  for (int j = 0; j < f.grid().n; ++j) {
    const cplx u = f.u(j);
    out << f.grid().r(j) << ',' << u.real() << ',' << u.imag() << '\n';
  }
}

RadialField read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::string geom_name;
  double r_max = 0.0;
  int n = 0;
  {
    std::istringstream header(line);
    std::string token;
    header >> token;  // "#"
    while (header >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
      if (key == "geometry") geom_name = value;
      else if (key == "r_max") r_max = parse_number(value);
      else if (key == "n") n = std::stoi(value);
    }
  }
  if (geom_name.empty() || n <= 0) throw IoError("missing CSV metadata line in " + path.string());
  std::getline(in, line);  // column names
  std::vector<cplx> u;
  u.reserve(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string r, re, im;
    std::getline(row, r, ',');
    std::getline(row, re, ',');
    std::getline(row, im, ',');
    u.emplace_back(parse_number(re), parse_number(im));
  }
  if (u.size() != static_cast<std::size_t>(n)) throw IoError("CSV row count does not match n");
  const RadialGrid grid(r_max, n);
  RadialField f(grid, geometry_from_string(geom_name));
  auto h = f.h_mut();
  const auto& w = f.weights();
  for (std::size_t j = 0; j < u.size(); ++j) {
    h[j] = (u[j] == cplx{0.0, 0.0}) ? u[j] : u[j] * std::exp(w.log_w[j]);
  }
  return f;
}

void write_snapshot(const RadialField& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(f.geometry() == Geometry::Hyperbolic ? 0 : 1));
  put(out, f.grid().r_max);
  put(out, static_cast<std::int64_t>(f.grid().n));
  for (const auto& v : f.h()) {
    put(out, v.real());
    put(out, v.imag());
  }
  if (!out) throw IoError("write failed for " + path.string());
}

RadialField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError(path.string() + " is not a field snapshot");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw IoError("unsupported snapshot version " + std::to_string(version));
  const auto geom = get<std::uint32_t>(in);
  const auto r_max = get<double>(in);
  const auto n = get<std::int64_t>(in);
  if (geom > 1 || n < 16) throw IoError("corrupt snapshot header in " + path.string());
  std::vector<cplx> h(static_cast<std::size_t>(n));
  for (auto& v : h) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = {re, im};
  }
  return RadialField(RadialGrid(r_max, static_cast<int>(n)),
                     geom == 0 ? Geometry::Hyperbolic : Geometry::Euclidean, std::move(h));
}

}  // namespace hnls::io
