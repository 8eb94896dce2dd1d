#include "pizza/serialize.hpp"

namespace pizza {

std::string sign_str(PieceSign s) {
    switch (s) {
        case PieceSign::plus:
            return "+";
        case PieceSign::minus:
            return "-";
        case PieceSign::mixed:
            return "mixed";
    }
    return "?";
}

nlohmann::ordered_json pizza_to_json(const Pizza& p) {
    nlohmann::ordered_json out;
    out["schema"] = "pizza/1";
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (const PizzaPiece& piece : p.pieces) {
        nlohmann::ordered_json j;
        j["left_arc"] = render_arc(piece.left);
        j["right_arc"] = render_arc(piece.right);
        j["beta"] = piece.beta.str();
        nlohmann::ordered_json q;
        q["lo"] = piece.Q.lo.str();
        q["hi"] = piece.Q.hi.str();
        q["lo_closed"] = piece.Q.lo_closed;
        q["hi_closed"] = piece.Q.hi_closed;
        q["hi_infinite"] = piece.Q.hi.is_inf();
        j["Q"] = q;
        switch (piece.width.kind) {
            case Width::Kind::affine: {
                nlohmann::ordered_json w;
                w["a"] = piece.width.a.str();
                w["b"] = piece.width.b.str();
                j["width"] = w;
                break;
            }
            case Width::Kind::point: {
                nlohmann::ordered_json w;
                w["point"] = piece.width.point_value.str();
                j["width"] = w;
                break;
            }
            case Width::Kind::infinite_:
                j["width"] = "infinite";
                break;
        }
        j["sign"] = sign_str(piece.sign);
        pieces.push_back(std::move(j));
    }
    out["pieces"] = std::move(pieces);
    return out;
}

}  // namespace pizza
