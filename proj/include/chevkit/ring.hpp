#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace chevkit {

using json = nlohmann::json;

struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonUnit : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotLocal : std::domain_error {
    using std::domain_error::domain_error;
};
struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Kind { Integers, IntMod, OddLocal, Dual, Omega, Residue };

// Payload of a ring element. Layout depends on the owning ring:
// small modular towers keep coefficients in c, Z and Zodd keep a
// machine-word value in c until it overflows, everything else lives in big.
struct Value {
    std::array<int64_t, 4> c{};
    std::shared_ptr<const std::vector<mpq_class>> big;
};

class Element;
struct RingImpl;

class Ring {
public:
    Ring() = default;

    static Ring make(std::string_view spec);
    static Ring integers();
    static Ring int_mod(int64_t n);
    static Ring odd_local();
    static Ring dual(const Ring& base);
    static Ring omega(const Ring& base);
    static Ring residue(const Ring& of);

    Kind kind() const;
    const std::string& spec() const;
    int64_t modulus() const;
    const Ring& base() const;

    bool is_local() const;
    bool is_field() const;
    bool local_without_half() const;
    int characteristic_of_residue() const;
    Ring residue_field() const;
    // Number of elements for finite fields, 0 otherwise.
    int64_t field_order() const;

    Element zero() const;
    Element one() const;
    Element from_int(int64_t v) const;
    Element from_mpz(const mpz_class& v) const;
    Element xi() const;
    Element random(std::mt19937_64& rng) const;
    Element random_unit(std::mt19937_64& rng) const;
    Element random_radical(std::mt19937_64& rng) const;
    Element parse(const json& j) const;
    Element parse(std::string_view text) const;

    // Raw value interface used by the matrix kernels.
    Value vzero() const;
    Value vone() const;
    Value vint(int64_t v) const;
    Value vmpz(const mpz_class& v) const;
    Value add(const Value& a, const Value& b) const;
    Value sub(const Value& a, const Value& b) const;
    Value neg(const Value& a) const;
    Value mul(const Value& a, const Value& b) const;
    void fma(Value& acc, const Value& a, const Value& b) const;
    bool is_zero(const Value& a) const;
    bool equal(const Value& a, const Value& b) const;
    bool is_unit(const Value& a) const;
    Value inv(const Value& a) const;
    bool in_radical(const Value& a) const;
    Value residue_value(const Value& a) const;
    json to_json(const Value& a) const;
    Value from_json(const json& j) const;
    std::string format(const Value& a) const;
    // Integer representative for Z, Z/n and integral elements of Zodd.
    bool as_integer(const Value& a, mpz_class& out) const;

    bool operator==(const Ring& o) const;
    bool operator!=(const Ring& o) const { return !(*this == o); }
    bool valid() const { return static_cast<bool>(p_); }
    const RingImpl* impl() const { return p_.get(); }

private:
    explicit Ring(std::shared_ptr<const RingImpl> p) : p_(std::move(p)) {}
    std::shared_ptr<const RingImpl> p_;
    friend struct RingImpl;
};

class Element {
public:
    Element() = default;
    Element(Ring r, Value v) : ring_(std::move(r)), v_(std::move(v)) {}

    const Ring& ring() const { return ring_; }
    const Value& value() const { return v_; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator-() const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    Element inverse() const;
    Element pow(int64_t k) const;
    bool is_unit() const { return ring_.is_unit(v_); }
    bool is_zero() const { return ring_.is_zero(v_); }
    bool in_radical() const { return ring_.in_radical(v_); }
    Element residue() const;
    json to_json() const { return ring_.to_json(v_); }
    std::string str() const { return ring_.format(v_); }

private:
    void check(const Element& o) const;
    Ring ring_;
    Value v_;
};

enum class ArithOp { Add, Sub, Mul };
Element arith(const Element& a, const Element& b, ArithOp op);

bool is_prime(int64_t n);

}  // namespace chevkit
