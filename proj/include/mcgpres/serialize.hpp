#pragma once

#include <json.hpp>
#include <string>

#include "mcgpres/presentation.hpp"

namespace mcgpres {

enum class Format { structured, algebra_text, human };

Format parse_format(const std::string& s);

nlohmann::json gen_to_json(const Gen& g);
Gen gen_from_json(const nlohmann::json& j);
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

std::string to_structured(const Presentation& P);
Presentation from_structured(const std::string& text);

std::string to_algebra_text(const Presentation& P);
Presentation from_algebra_text(const std::string& text);

std::string to_human(const Presentation& P);

std::string dump(const Presentation& P, Format f);
Presentation load(const std::string& text, Format f);

}  // namespace mcgpres
