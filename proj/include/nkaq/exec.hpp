#pragma once

namespace nkaq {

// Selects the OpenMP kernel or its serial reference twin.
enum class Exec { serial, parallel };

}  // namespace nkaq
