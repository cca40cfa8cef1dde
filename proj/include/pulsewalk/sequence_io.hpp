#pragma once

#include "pulsewalk/core.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace pulsewalk {

/// Sequence documents are JSON objects:
///
///   {
///     "name": "knill",
///     "intended_net_effect": {"axis": [1, 0, 0], "angle_over_pi": 1},
///     "steps": [{"phase_over_pi": 0.1666666667, "angle_over_pi": 1}, ...]
///   }
///
/// `intended_net_effect` is optional and defaults to a pi rotation about x. Every angle is a
/// decimal fraction of pi. Errors carry ErrorCode::parse_error and name the offending field,
/// e.g. "steps[2].angle_over_pi".
Sequence parse_sequence(std::string_view text);
Sequence read_sequence(const std::filesystem::path& path);

std::string sequence_to_json(const Sequence& seq);
void write_sequence(const Sequence& seq, const std::filesystem::path& path);

}  // namespace pulsewalk
