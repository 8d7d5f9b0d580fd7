#pragma once

#include <string>

namespace sbc {

/// Locale-independent decimal formatting, 12 significant digits by default.
std::string format_sig(double x, int digits = 12);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace sbc
