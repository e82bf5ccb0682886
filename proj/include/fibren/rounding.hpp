#pragma once

#include <cassert>
#include <cfenv>

namespace fibren {

namespace detail {
inline thread_local int rounding_depth = 0;
}

// Scoped round-up regime. All interval kernels assume FE_UPWARD is active on
// the calling thread; lower endpoints are obtained by negation. Scopes nest.
// Non-rigorous float work must not be interleaved inside a scope except where
// only used as a predictor (a predictor off by ulps costs certificate width,
// never soundness).
class RoundingScope {
  public:
    RoundingScope() : saved_(std::fegetround()) {
        std::fesetround(FE_UPWARD);
        ++detail::rounding_depth;
    }
    ~RoundingScope() {
        --detail::rounding_depth;
        std::fesetround(detail::rounding_depth > 0 ? FE_UPWARD : saved_);
    }
    RoundingScope(const RoundingScope&) = delete;
    RoundingScope& operator=(const RoundingScope&) = delete;

  private:
    int saved_;
};

inline bool rounding_scope_active() { return detail::rounding_depth > 0; }

#ifndef NDEBUG
#define FIBREN_ASSERT_ROUNDING() assert(::fibren::rounding_scope_active() && std::fegetround() == FE_UPWARD)
#else
#define FIBREN_ASSERT_ROUNDING() ((void)0)
#endif

} // namespace fibren
