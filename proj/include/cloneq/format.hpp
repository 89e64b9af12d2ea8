#pragma once

#include <string>

namespace cloneq {

// "%.12g" — the project-wide numeric output format (12 significant
// digits; CSV headers and columns are a stable interface).
std::string fmt12(double value);

// The double nearest to what fmt12 prints; used so JSON numbers carry the
// same 12-digit precision as the text outputs.
double round12(double value);

}  // namespace cloneq
