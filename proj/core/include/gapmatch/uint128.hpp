#pragma once

namespace gapmatch {

// 128-bit product type for 64-bit modular arithmetic.
__extension__ typedef unsigned __int128 u128;

}  // namespace gapmatch
