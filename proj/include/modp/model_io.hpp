#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "modp/momdp.hpp"

namespace modp {

/// Malformed model text. what() carries a line/column or a JSON path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

/**
 * Parses the JSON model format:
 *
 *     {"version": 1, "objectives": q, "gamma": g, "start": "<id>",
 *      "terminals": ["<id>", ...], "continuing": false,
 *      "states": [{"id": "<id>", "actions": [{"name": "<name>",
 *          "transitions": [{"to": "<id>", "p": 0.8, "r": [r1, ..., rq]}]}]}]}
 *
 * State indices follow file order. "continuing" is optional and defaults to
 * false. Only structural problems are rejected here; use validate() for the
 * model invariants.
 */
Momdp load_model(std::string_view text);

/// Canonical text form; load_model(save_model(m)) == m bit-exactly.
std::string save_model(const Momdp& m);

Momdp load_model_file(const std::filesystem::path& path);
void save_model_file(const Momdp& m, const std::filesystem::path& path);

}  // namespace modp
