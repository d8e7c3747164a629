#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

namespace minibox {

/// Three-valued truth for guards evaluated over intervals.
enum class Truth3 : std::uint8_t { true3, false3, maybe3 };

enum class LogicOp : std::uint8_t { lnot, land, lor };

// Strong Kleene connectives.
Truth3 truth_not(Truth3 a);
Truth3 truth_and(Truth3 a, Truth3 b);
Truth3 truth_or(Truth3 a, Truth3 b);

// Dispatch form; `b` must be present iff `op` is binary (std::invalid_argument otherwise).
Truth3 truth3_logic(LogicOp op, Truth3 a, std::optional<Truth3> b = std::nullopt);

inline Truth3 to_truth3(bool b) { return b ? Truth3::true3 : Truth3::false3; }

std::string_view to_string(Truth3 t);
std::ostream& operator<<(std::ostream& os, Truth3 t);

} // namespace minibox
