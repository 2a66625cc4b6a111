#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "vdw/ap_check.hpp"

namespace vdw::search {

/// Witness that W(r, k) > length: a coloring of 1..length with no
/// monochromatic k-term progression.
struct Certificate {
  unsigned r = 2;
  unsigned k = 3;
  std::size_t length = 0;
  Coloring coloring;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CertificateParseError : std::runtime_error {
  CertificateParseError(const std::string& what, std::size_t line)
      : std::runtime_error("certificate line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Checks the declared length, color range and progression-freeness using
/// only the reference scan.
bool verify_certificate(const Certificate& cert);

/// Text format: optional '#' comment lines, then `r k length`, then the
/// `length` colors separated by spaces.
void write_certificate(std::ostream& out, const Certificate& cert);
void write_certificate(const std::filesystem::path& path, const Certificate& cert);

/// Throws CertificateParseError on malformed input. Colors are read as
/// given; out-of-range values surface through verify_certificate.
Certificate read_certificate(std::istream& in);
Certificate read_certificate(const std::filesystem::path& path);

}  // namespace vdw::search
