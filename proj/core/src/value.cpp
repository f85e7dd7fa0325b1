#include "treo/value.hpp"

#include <cmath>

#include "treo/definition.hpp"

namespace treo {

size_t len(const Value& v)
{
    return v.is_array() ? v.as_array().size() : 0;
}

bool value_equal(const Value& a, const Value& b)
{
    if (a.tag() != b.tag())
        return false;
    switch (a.tag()) {
    case 0: return a.as_int() == b.as_int();
    case 1: return a.as_bool() == b.as_bool();
    case 2: return a.as_text() == b.as_text();
    case 3: return a.as_decimal() == b.as_decimal();
    case 4: return a.as_component().structurally_equal(b.as_component());
    case 5: return a.as_definition() == b.as_definition();
    default: {
        const auto& xs = a.as_array();
        const auto& ys = b.as_array();
        if (xs.size() != ys.size())
            return false;
        for (size_t i = 0; i < xs.size(); ++i)
            if (!value_equal(xs[i], ys[i]))
                return false;
        return true;
    }
    }
}

namespace {

template <typename T>
int cmp3(const T& a, const T& b)
{
    return a < b ? -1 : (b < a ? 1 : 0);
}

} // namespace

int value_compare(const Value& a, const Value& b)
{
    if (a.tag() != b.tag())
        return a.tag() < b.tag() ? -1 : 1;
    switch (a.tag()) {
    case 0: return cmp3(a.as_int(), b.as_int());
    case 1: return cmp3(a.as_bool(), b.as_bool());
    case 2: return cmp3(a.as_text(), b.as_text());
    case 3: return cmp3(a.as_decimal(), b.as_decimal());
    case 4: return cmp3(a.as_component().uid(), b.as_component().uid());
    case 5: {
        uint64_t ua = a.as_definition() ? a.as_definition()->uid : 0;
        uint64_t ub = b.as_definition() ? b.as_definition()->uid : 0;
        return cmp3(ua, ub);
    }
    default: {
        const auto& xs = a.as_array();
        const auto& ys = b.as_array();
        size_t n = std::min(xs.size(), ys.size());
        for (size_t i = 0; i < n; ++i)
            if (int c = value_compare(xs[i], ys[i]); c != 0)
                return c;
        return cmp3(xs.size(), ys.size());
    }
    }
}

std::string to_string(const Value& v)
{
    switch (v.tag()) {
    case 0: return std::to_string(v.as_int());
    case 1: return v.as_bool() ? "true" : "false";
    case 2: return "\"" + v.as_text() + "\"";
    case 3: {
        std::string s = std::to_string(v.as_decimal());
        return s;
    }
    case 4: return "<component " + v.as_component().payload().describe() + ">";
    case 5: return v.as_definition() ? "<definition " + v.as_definition()->name + ">" : "<definition>";
    default: {
        std::string out = "[";
        bool first = true;
        for (const auto& e : v.as_array()) {
            if (!first)
                out += ", ";
            first = false;
            out += to_string(e);
        }
        return out + "]";
    }
    }
}

Result<uint64_t> as_natural(const Value& v, Span where)
{
    if (!v.is_int())
        return make_error(ErrorKind::TypeMismatch, "index must be a natural number, got " + to_string(v), where);
    if (v.as_int() < 0)
        return make_error(ErrorKind::OutOfRange, "index must be non-negative, got " + to_string(v), where);
    return static_cast<uint64_t>(v.as_int());
}

bool is_natural_array(const Value& v)
{
    if (v.is_array()) {
        for (const auto& e : v.as_array())
            if (!is_natural_array(e))
                return false;
        return true;
    }
    return v.is_int() && v.as_int() >= 0;
}

namespace {

// Shared traversal for multi-index access. `AtomIndex` applies one natural to
// an atom (names subscript, values fail); both carriers use the same
// distribution rule for list-shaped indices.
template <typename T, typename ChildAt>
Result<T> access_rec(const T& x, const std::vector<Value>& idx, size_t pos, Span where, ChildAt&& child_at)
{
    if (pos == idx.size())
        return x;
    const Value& head = idx[pos];
    if (head.is_array()) {
        typename T::List out;
        out.reserve(head.as_array().size());
        for (const auto& e : head.as_array()) {
            std::vector<Value> rest;
            rest.reserve(1 + (idx.size() - pos - 1));
            rest.push_back(e);
            rest.insert(rest.end(), idx.begin() + pos + 1, idx.end());
            TREO_TRY(auto sub, access_rec(x, rest, 0, where, child_at));
            out.push_back(std::move(sub));
        }
        return T{std::move(out)};
    }
    TREO_TRY(uint64_t i, as_natural(head, where));
    TREO_TRY(auto child, child_at(x, i));
    return access_rec(child, idx, pos + 1, where, child_at);
}

} // namespace

Result<Value> access(const Value& x, const Value& index, Span where)
{
    std::vector<Value> idx;
    if (index.is_array())
        idx = index.as_array();
    else
        idx.push_back(index);

    auto child_at = [&](const Value& cur, uint64_t i) -> Result<Value> {
        if (!cur.is_array())
            return make_error(ErrorKind::OutOfRange,
                              "cannot index into atom " + to_string(cur), where);
        const auto& xs = cur.as_array();
        if (i >= xs.size())
            return make_error(ErrorKind::OutOfRange,
                              "index " + std::to_string(i) + " out of range for array of length " +
                                  std::to_string(xs.size()),
                              where);
        return xs[i];
    };
    return access_rec(x, idx, 0, where, child_at);
}

Result<NameArray> access_names(const NameArray& x, const Value& index, Span where)
{
    std::vector<Value> idx;
    if (index.is_array())
        idx = index.as_array();
    else
        idx.push_back(index);

    auto child_at = [&](const NameArray& cur, uint64_t i) -> Result<NameArray> {
        if (cur.is_atom())
            return NameArray{cur.atom().subscript(i)};
        const auto& xs = cur.list();
        if (i >= xs.size())
            return make_error(ErrorKind::OutOfRange,
                              "index " + std::to_string(i) + " out of range for array of length " +
                                  std::to_string(xs.size()),
                              where);
        return xs[i];
    };
    return access_rec(x, idx, 0, where, child_at);
}

void flatten(const Value& v, std::vector<Value>& out)
{
    if (!v.is_array()) {
        out.push_back(v);
        return;
    }
    for (const auto& e : v.as_array())
        flatten(e, out);
}

Value::Array flatten(const Value& v)
{
    Value::Array out;
    flatten(v, out);
    return out;
}

Value lst(int64_t i, int64_t j)
{
    Value::Array out;
    for (int64_t k = i; k <= j; ++k)
        out.push_back(Value{k});
    return Value{std::move(out)};
}

bool shape_match(const Value& a, const Value& b)
{
    if (a.is_atom() || b.is_atom())
        return a.is_atom() && b.is_atom();
    const auto& xs = a.as_array();
    const auto& ys = b.as_array();
    if (xs.size() != ys.size())
        return false;
    for (size_t i = 0; i < xs.size(); ++i)
        if (!shape_match(xs[i], ys[i]))
            return false;
    return true;
}

bool shape_match(const NameArray& a, const Value& b)
{
    if (a.is_atom() || b.is_atom())
        return a.is_atom() && b.is_atom();
    const auto& xs = a.list();
    const auto& ys = b.as_array();
    if (xs.size() != ys.size())
        return false;
    for (size_t i = 0; i < xs.size(); ++i)
        if (!shape_match(xs[i], ys[i]))
            return false;
    return true;
}

bool shape_match(const NameArray& a, const NameArray& b)
{
    if (a.is_atom() || b.is_atom())
        return a.is_atom() && b.is_atom();
    const auto& xs = a.list();
    const auto& ys = b.list();
    if (xs.size() != ys.size())
        return false;
    for (size_t i = 0; i < xs.size(); ++i)
        if (!shape_match(xs[i], ys[i]))
            return false;
    return true;
}

} // namespace treo
