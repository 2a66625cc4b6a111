#include "vdw/certificate.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace vdw::search {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

bool is_blank(const std::string& line) {
  for (char ch : line) {
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

// Strict integer token: optional '-', then digits only.
bool parse_integer(const std::string& token, long long& out) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(token, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == token.size();
}

}  // namespace

bool verify_certificate(const Certificate& cert) {
  if (cert.r < 2 || cert.k < 3) return false;
  if (cert.coloring.colors.size() != cert.length) return false;
  for (std::uint8_t c : cert.coloring.colors) {
    if (c >= cert.r) return false;
  }
  return ap_free(cert.coloring, cert.k);
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "# W(" << cert.r << "," << cert.k << ") > " << cert.length << '\n';
  out << cert.r << ' ' << cert.k << ' ' << cert.length << '\n';
  for (std::size_t i = 0; i < cert.coloring.colors.size(); ++i) {
    if (i) out << ' ';
    out << static_cast<unsigned>(cert.coloring.colors[i]);
  }
  out << '\n';
}

void write_certificate(const std::filesystem::path& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write certificate to " + path.string());
  write_certificate(out, cert);
}

Certificate read_certificate(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!is_blank_or_comment(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw CertificateParseError("missing `r k length` header", lineno + 1);

  Certificate cert;
  {
    std::istringstream fields(line);
    std::string tok[3], extra;
    long long v[3];
    if (!(fields >> tok[0] >> tok[1] >> tok[2]) || (fields >> extra)) {
      throw CertificateParseError("header must be `r k length`", lineno);
    }
    for (int i = 0; i < 3; ++i) {
      if (!parse_integer(tok[i], v[i]) || v[i] < 0) {
        throw CertificateParseError("header field '" + tok[i] + "' is not a non-negative integer", lineno);
      }
    }
    if (v[0] > 255) throw CertificateParseError("at most 255 colors supported", lineno);
    if (v[1] > std::numeric_limits<unsigned>::max()) throw CertificateParseError("k too large", lineno);
    cert.r = static_cast<unsigned>(v[0]);
    cert.k = static_cast<unsigned>(v[1]);
    cert.length = static_cast<std::size_t>(v[2]);
    cert.coloring.r = cert.r;
  }

  std::string colors_line;
  const bool have_colors = static_cast<bool>(std::getline(in, colors_line));
  ++lineno;
  if (!have_colors && cert.length > 0) throw CertificateParseError("missing color line", lineno);

  std::istringstream fields(colors_line);
  std::string tok;
  cert.coloring.colors.reserve(cert.length);
  while (fields >> tok) {
    long long c = 0;
    if (!parse_integer(tok, c)) throw CertificateParseError("color '" + tok + "' is not an integer", lineno);
    // Out-of-range colors are kept as an out-of-range marker so that the
    // verdict is "invalid" rather than "malformed".
    cert.coloring.colors.push_back(c < 0 || c > 254 ? std::uint8_t{255} : static_cast<std::uint8_t>(c));
  }
  if (cert.coloring.colors.size() != cert.length) {
    throw CertificateParseError("expected " + std::to_string(cert.length) + " colors, found " +
                                    std::to_string(cert.coloring.colors.size()),
                                lineno);
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (!is_blank(line)) throw CertificateParseError("unexpected trailing content", lineno);
  }
  return cert;
}

Certificate read_certificate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CertificateParseError("cannot open " + path.string(), 0);
  return read_certificate(in);
}

}  // namespace vdw::search
