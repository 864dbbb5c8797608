#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqs/bipoly.hpp"
#include "fqs/error.hpp"
#include "fqs/poly.hpp"

namespace fqs::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::optional<std::uint64_t> q;
    std::optional<std::uint64_t> p;
    std::optional<unsigned> k;
    std::vector<std::uint64_t> modulus;  // low degree first, monic
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    Format format = Format::Json;
};

/// Default worker count: FQS_THREADS when set to a positive integer, else 1.
unsigned default_threads();

/// Field described by --q or --p/--k, with an optional modulus override.
FieldRef make_field(const RunConfig& cfg);

/// Terms joined by '+'/'-'; a term is an optional integer, then factors t, x or
/// y (the field generator, k > 1 only), each with an optional '^' exponent and
/// optionally separated by '*'. Integers are reduced mod p. Whitespace is ignored.
/// Throws ParseError (message carries the offset) or UnknownVariable.
BiPoly parse_poly(std::string_view text, const FieldRef& field);

/// A polynomial in a single variable ('t' or 'x'; 't' for constants).
Poly parse_univariate(std::string_view text, const FieldRef& field);

/// A field element written as a constant expression in y.
Fe parse_element(std::string_view text, const FieldRef& field);

/// ParseError or UnknownVariable with the byte offset of the offending character.
class ParseFailure : public Error {
public:
    ParseFailure(ErrorCode code, std::size_t offset, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Runs one subcommand (args exclude the program name). Exit code 0 on success
/// or PASS, 1 when a checked property fails, 2 on input or hypothesis errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqs::cli
