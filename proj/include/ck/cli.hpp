#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: verification suites, classification queries
 *        and the orbit table, emitted as JSON (CSV for the orbit table).
 *
 * Exit codes: 0 when every check passes, 1 when a check fails, 2 on invalid
 * input.
 */

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ck/indrep.hpp"

namespace ck::cli {

inline constexpr const char* kVersion = "0.1.0";

struct CheckRecord {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Invariant suite for one signature: closed forms against the oracles,
/// metric preservation, factorization, structure constants, and for
/// contracted signatures (j_1 = d) the coadjoint and transport identities.
[[nodiscard]] std::vector<CheckRecord> verify_suite(const Signature& sig, std::uint64_t seed, std::size_t trials);

/// Homomorphism, phase modulus and closed-form checks of one representation.
[[nodiscard]] std::vector<CheckRecord> rep_suite(const RepContext& ctx, std::uint64_t seed, std::size_t trials);

struct OrbitRow {
  Signature signature;
  Vector character;
  OrbitClass cls;
  bool discrepancy = false;
};

/// Classification of representative characters over all signatures (d, j')
/// with j' of length n - 1. Requires 2 <= n <= 6.
[[nodiscard]] std::vector<OrbitRow> orbit_table(std::size_t n);

/// Consistency checks over a table: no negative invariant without a negative
/// weight, h = 0 classified as a point, every discrepancy flagged.
[[nodiscard]] std::vector<CheckRecord> orbit_table_checks(const std::vector<OrbitRow>& rows);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ck::cli
