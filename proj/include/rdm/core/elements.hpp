#pragma once

#include <string_view>

namespace rdm {

// True for the 118 IUPAC element symbols (case-sensitive, e.g. "Fe", not "FE").
bool is_element_symbol(std::string_view symbol) noexcept;

}  // namespace rdm
