#include "hdisk/json_io.hpp"

#include "hdisk/errors.hpp"

namespace hdisk {

using nlohmann::json;

json cplx_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw ArgError("complex scalar must be [re, im] or a bare number, got: " + j.dump());
}

json expr_to_json(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return {{"op", "const"}, {"value", cplx_to_json(e->c)}};
        case ExprKind::Z: return {{"op", "z"}};
        case ExprKind::Add: return {{"op", "add"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
        case ExprKind::Sub: return {{"op", "sub"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
        case ExprKind::Mul: return {{"op", "mul"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
        case ExprKind::Div: return {{"op", "div"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
        case ExprKind::Neg: return {{"op", "neg"}, {"arg", expr_to_json(e->lhs)}};
        case ExprKind::Scale: return {{"op", "scale"}, {"k", cplx_to_json(e->c)}, {"arg", expr_to_json(e->lhs)}};
        case ExprKind::Affine: return {{"op", "affine"}, {"a", cplx_to_json(e->c)}, {"b", cplx_to_json(e->b)}};
        case ExprKind::Pow: return {{"op", "pow"}, {"base", expr_to_json(e->lhs)}, {"exp", e->alpha}};
        case ExprKind::Log: return {{"op", "log"}, {"arg", expr_to_json(e->lhs)}};
        case ExprKind::Exp: return {{"op", "exp"}, {"arg", expr_to_json(e->lhs)}};
        case ExprKind::Compose:
            return {{"op", "compose"}, {"outer", expr_to_json(e->lhs)}, {"inner", expr_to_json(e->rhs)}};
        case ExprKind::Blaschke: return {{"op", "blaschke"}, {"a", cplx_to_json(e->c)}};
    }
    throw Error("unreachable expression kind");
}

ExprPtr expr_from_json(const json& j) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
        throw ArgError("expression node must be an object with an \"op\" string");
    const std::string op = j["op"].get<std::string>();
    auto child = [&](const char* key) -> ExprPtr {
        if (!j.contains(key))
            throw ArgError("op \"" + op + "\" is missing field \"" + key + "\"");
        return expr_from_json(j[key]);
    };
    auto num = [&](const char* key) -> cplx {
        if (!j.contains(key))
            throw ArgError("op \"" + op + "\" is missing field \"" + key + "\"");
        return cplx_from_json(j[key]);
    };
    if (op == "const") return constant(num("value"));
    if (op == "z") return var_z();
    if (op == "add") return add(child("lhs"), child("rhs"));
    if (op == "sub") return sub(child("lhs"), child("rhs"));
    if (op == "mul") return mul(child("lhs"), child("rhs"));
    if (op == "div") return div(child("lhs"), child("rhs"));
    if (op == "neg") return neg(child("arg"));
    if (op == "scale") return scale(num("k"), child("arg"));
    if (op == "affine") return affine(num("a"), num("b"));
    if (op == "pow") {
        if (!j.contains("exp") || !j["exp"].is_number())
            throw ArgError("op \"pow\" needs a numeric \"exp\" field");
        return pow(child("base"), j["exp"].get<double>());
    }
    if (op == "log") return log(child("arg"));
    if (op == "exp") return exp(child("arg"));
    if (op == "compose") return compose(child("outer"), child("inner"));
    if (op == "blaschke") return blaschke(num("a"));
    throw ArgError("unknown expression op \"" + op + "\"");
}

std::string expr_to_json_text(const ExprPtr& e, int indent) {
    return expr_to_json(e).dump(indent);
}

ExprPtr expr_from_json_text(const std::string& text) {
    return expr_from_json(json::parse(text));
}

} // namespace hdisk
