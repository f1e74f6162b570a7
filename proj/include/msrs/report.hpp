// Text and JSON renderings of classification results.
#pragma once

#include <string>

#include "msrs/classify.hpp"

namespace msrs {

// Decimal digits that resolve an interval of the given width.
int digits_for_width(const Rat& width);

std::string render_json(const ClassificationResult& r, const Rat& refine_width, bool timing);
std::string render_text(const ClassificationResult& r, const Rat& refine_width, bool timing);

}  // namespace msrs
