// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

namespace botlens {

enum class UserClass { human = 0, bot = 1 };

inline const char* to_string(UserClass c) { return c == UserClass::bot ? "bot" : "human"; }

/// Plural series/group label.
inline const char* group_label(UserClass c) { return c == UserClass::bot ? "bots" : "humans"; }

/// user_id -> class. Users absent from the map are unclassified.
using Partition = std::unordered_map<std::string, UserClass>;

}  // namespace botlens
