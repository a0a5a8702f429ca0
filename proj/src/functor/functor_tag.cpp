#include "abelim/functors.hpp"

#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"

namespace abelim {

FunctorTag FunctorTag::tensor_with(const std::string& group)
{
    FunctorTag f;
    f.kind = Kind::TensorWith;
    f.with = parse_group_expr(group);
    f.with_text = group;
    return f;
}

FunctorTag FunctorTag::tor_with(const std::string& group)
{
    FunctorTag f = tensor_with(group);
    f.kind = Kind::TorWith;
    return f;
}

FunctorTag FunctorTag::lambda(std::size_t n)
{
    if (n < 1)
        throw ConfigError("lambda needs n >= 1");
    FunctorTag f;
    f.kind = Kind::Lambda;
    f.n = n;
    return f;
}

FunctorTag FunctorTag::l1lambda2()
{
    FunctorTag f;
    f.kind = Kind::L1Lambda2;
    return f;
}

FunctorTag FunctorTag::homology(std::size_t n)
{
    FunctorTag f;
    f.kind = Kind::Homology;
    f.n = n;
    return f;
}

std::string FunctorTag::label() const
{
    switch (kind) {
    case Kind::TensorWith:
        return "tensor(" + with_text + ")";
    case Kind::TorWith:
        return "tor(" + with_text + ")";
    case Kind::Lambda:
        return "lambda(" + std::to_string(n) + ")";
    case Kind::L1Lambda2:
        return "l1lambda2";
    case Kind::Homology:
        return "homology(" + std::to_string(n) + ")";
    }
    return "";
}

Presentation FunctorTag::apply(const Presentation& a) const
{
    switch (kind) {
    case Kind::TensorWith:
        return tensor(a, with);
    case Kind::TorWith:
        return tor(a, with);
    case Kind::Lambda:
        return abelim::lambda(n, a);
    case Kind::L1Lambda2:
        return abelim::l1lambda2(a);
    case Kind::Homology:
        return homology_group(a, n);
    }
    return a;
}

Homomorphism FunctorTag::apply(const Homomorphism& f) const
{
    switch (kind) {
    case Kind::TensorWith:
        return tensor_induced(f, Homomorphism::identity(with));
    case Kind::TorWith:
        return tor_induced(f, with);
    case Kind::Lambda:
        return lambda_induced(n, f);
    case Kind::L1Lambda2:
        return l1lambda2_induced(f);
    case Kind::Homology:
        return homology_induced(n, f);
    }
    return f;
}

bool FunctorTag::has_induced(const Presentation& a) const
{
    switch (kind) {
    case Kind::L1Lambda2:
        return a.diagonal_orders().has_value();
    case Kind::Homology:
        return homology_has_induced(n, a);
    default:
        return true;
    }
}

void to_json(nlohmann::json& j, const FunctorTag& f)
{
    switch (f.kind) {
    case FunctorTag::Kind::TensorWith:
        j = {{"functor", "tensor"}, {"with", f.with_text}};
        break;
    case FunctorTag::Kind::TorWith:
        j = {{"functor", "tor"}, {"with", f.with_text}};
        break;
    case FunctorTag::Kind::Lambda:
        j = {{"functor", "lambda"}, {"n", f.n}};
        break;
    case FunctorTag::Kind::L1Lambda2:
        j = {{"functor", "l1lambda2"}};
        break;
    case FunctorTag::Kind::Homology:
        j = {{"functor", "homology"}, {"n", f.n}};
        break;
    }
}

FunctorTag functor_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("functor") || !j["functor"].is_string())
        throw ConfigError("functor spec needs a \"functor\" name");
    const std::string name = j["functor"];
    auto need_n = [&]() -> std::size_t {
        if (!j.contains("n") || !j["n"].is_number_unsigned())
            throw ConfigError("functor \"" + name + "\" needs a nonnegative integer \"n\"");
        return j["n"].get<std::size_t>();
    };
    auto need_with = [&]() -> std::string {
        if (!j.contains("with") || !j["with"].is_string())
            throw ConfigError("functor \"" + name + "\" needs a group \"with\"");
        return j["with"];
    };
    if (name == "tensor")
        return FunctorTag::tensor_with(need_with());
    if (name == "tor")
        return FunctorTag::tor_with(need_with());
    if (name == "lambda")
        return FunctorTag::lambda(need_n());
    if (name == "l1lambda2")
        return FunctorTag::l1lambda2();
    if (name == "homology")
        return FunctorTag::homology(need_n());
    throw ConfigError("unknown functor \"" + name + "\"");
}

nlohmann::json to_json(const CanonicalForm& cf)
{
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& d : cf.invariant_factors) {
        if (d.fits_slong_p())
            factors.push_back(d.get_si());
        else
            factors.push_back(d.get_str());
    }
    return {{"rank", cf.free_rank}, {"factors", factors}, {"text", cf.to_string()}};
}

} // namespace abelim
