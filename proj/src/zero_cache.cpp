#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "sarg/argzeros.hpp"
#include "sarg/error.hpp"

namespace sarg {

namespace {

// Fixed notation with 17 significant digits: at least 12 shown, and lossless.
std::string decimal17(double v) {
  const double a = std::abs(v);
  int int_digits = a >= 1.0 ? static_cast<int>(std::floor(std::log10(a))) + 1 : 1;
  int frac = std::max(0, 17 - int_digits);
  if (a > 0.0 && a < 1.0) frac = 17 - static_cast<int>(std::floor(std::log10(a)));
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f", frac, v);
  return buf;
}

std::string general17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(std::string("malformed ") + what + " '" + s + "'", line);
  }
  return v;
}

}  // namespace

std::string format_zero_list(const ZeroList& zeros) {
  std::ostringstream out;
  out << "# zeros v1 q=" << zeros.modulus << " chi=" << zeros.label << " T=" << decimal17(zeros.height)
      << " branch=" << general17(zeros.branch_constant.real()) << "," << general17(zeros.branch_constant.imag())
      << " complete=" << (zeros.certified() ? 1 : 0) << "\n";
  for (double g : zeros.ordinates) out << decimal17(g) << "\n";
  return out.str();
}

ZeroList parse_zero_list(const std::string& text) {
  static const std::regex header(
      R"(# zeros v1 q=([1-9][0-9]*) chi=([1-9][0-9]*\.[0-9]+(?:-[0-9]+)*) T=(\S+) branch=([^,\s]+),(\S+) complete=([01]))");
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty zero file", 1);
  std::smatch m;
  if (!std::regex_match(line, m, header)) throw ParseError("malformed header", 1);

  ZeroList z;
  z.modulus = std::stoi(m[1].str());
  z.label = m[2].str();
  if (z.label.substr(0, z.label.find('.')) != m[1].str()) {
    throw IntegrityError("zero file header: label " + z.label + " does not match q=" + m[1].str());
  }
  // validates exponent ranges as well
  const DirichletCharacter chi = parse_character_label(z.label);
  (void)chi;
  z.height = parse_double(m[3].str(), 1, "height");
  z.branch_constant = {parse_double(m[4].str(), 1, "branch"), parse_double(m[5].str(), 1, "branch")};
  z.completeness = m[6].str() == "1" ? Completeness::certified : Completeness::uncertified;

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw ParseError("empty line", lineno);
    const double g = parse_double(line, lineno, "ordinate");
    if (!(g > 0.0 && g <= z.height)) throw ParseError("ordinate outside (0, T]", lineno);
    if (!z.ordinates.empty() && !(g > z.ordinates.back())) {
      throw ParseError("ordinates not strictly increasing", lineno);
    }
    z.ordinates.push_back(g);
  }
  return z;
}

void save_zeros(const ZeroList& zeros, const std::filesystem::path& destination) {
  const auto tmp = destination.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("save_zeros: cannot write " + tmp);
    out << format_zero_list(zeros);
    out.flush();
    if (!out) throw Error("save_zeros: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, destination);
}

ZeroList load_zeros(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ParseError("cannot open " + source.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_zero_list(buf.str());
}

ZeroList cached_zeros(const DirichletCharacter& chi, double height, const std::filesystem::path& dir) {
  const auto path = dir / (chi.label() + ".zeros");
  if (std::filesystem::exists(path)) {
    try {
      ZeroList z = load_zeros(path);
      if (z.certified() && z.height >= height) {
        verify_zero_list(z, chi);
        std::erase_if(z.ordinates, [&](double g) { return g > height; });
        z.height = height;
        return z;
      }
    } catch (const ParseError&) {
      // stale or damaged cache entry: recompute below
    } catch (const IntegrityError&) {
    }
  }
  ZeroList z = find_zeros(chi, height);
  if (z.certified()) {
    std::filesystem::create_directories(dir);
    save_zeros(z, path);
  }
  return z;
}

ZeroSet cached_zero_set(const DirichletCharacter& chi, double height, const std::filesystem::path& dir) {
  ZeroSet zs;
  zs.upper = cached_zeros(chi, height, dir);
  zs.lower = chi.is_real() ? zs.upper : cached_zeros(chi.conj(), height, dir);
  return zs;
}

}  // namespace sarg
