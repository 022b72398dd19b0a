#pragma once

#include <stdexcept>
#include <string>

namespace ffgeom {

// Every failure the library can report, one code per contract violation.
enum class errc {
  not_prime,
  even_characteristic,
  too_large,
  equal_points,
  parse_error,
  not_a_tree,
  bad_pin,
  incomplete_embedding,
  not_injective,
  empty_pool,
  bad_block_size,
  empty_input,
  regime_mismatch,
  restriction_violated,
  no_isotropic_lines,
  size_exceeds_plane,
  config_error,
  io_error,
  invalid_argument,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::even_characteristic: return "EvenCharacteristic";
    case errc::too_large: return "TooLarge";
    case errc::equal_points: return "EqualPoints";
    case errc::parse_error: return "ParseError";
    case errc::not_a_tree: return "NotATree";
    case errc::bad_pin: return "BadPin";
    case errc::incomplete_embedding: return "IncompleteEmbedding";
    case errc::not_injective: return "NotInjective";
    case errc::empty_pool: return "EmptyPool";
    case errc::bad_block_size: return "BadBlockSize";
    case errc::empty_input: return "EmptyInput";
    case errc::regime_mismatch: return "RegimeMismatch";
    case errc::restriction_violated: return "RestrictionViolated";
    case errc::no_isotropic_lines: return "NoIsotropicLines";
    case errc::size_exceeds_plane: return "SizeExceedsPlane";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ffgeom
