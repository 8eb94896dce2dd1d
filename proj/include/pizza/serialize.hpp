#ifndef PIZZA_SERIALIZE_HPP
#define PIZZA_SERIALIZE_HPP

#include <json.hpp>

#include "pizza/pizza.hpp"

namespace pizza {

// stable JSON form of the pizza (schema "pizza/1"); rationals are "p/q" strings
nlohmann::ordered_json pizza_to_json(const Pizza& p);

std::string sign_str(PieceSign s);

}  // namespace pizza

#endif
