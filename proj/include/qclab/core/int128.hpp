#pragma once

namespace qclab {

__extension__ typedef __int128 Int128;

}  // namespace qclab
