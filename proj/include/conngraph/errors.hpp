#pragma once

#include <stdexcept>
#include <string>

namespace conngraph {

/// Base class for every error raised by the library. `kind()` names the
/// failure category so callers (the CLI in particular) can map it to an exit
/// status without string matching.
class Error : public std::runtime_error {
public:
    enum class Kind {
        DisconnectedTemplate,
        InvalidEdge,
        InvalidParameter,
        MismatchedParents,
        EmptyUnion,
        NotSymmetric,
        NoConvergence,
        NegativeRadicand,
        TStarNotFound,
        TooManyEdges,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

#define CONNGRAPH_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(Kind::Name, what) {}     \
    };

CONNGRAPH_DEFINE_ERROR(DisconnectedTemplate)
CONNGRAPH_DEFINE_ERROR(InvalidEdge)
CONNGRAPH_DEFINE_ERROR(InvalidParameter)
CONNGRAPH_DEFINE_ERROR(MismatchedParents)
CONNGRAPH_DEFINE_ERROR(EmptyUnion)
CONNGRAPH_DEFINE_ERROR(NotSymmetric)
CONNGRAPH_DEFINE_ERROR(NoConvergence)
CONNGRAPH_DEFINE_ERROR(NegativeRadicand)
CONNGRAPH_DEFINE_ERROR(TooManyEdges)

#undef CONNGRAPH_DEFINE_ERROR

/// Raised when no horizon T <= t_max reaches the target; carries the best
/// bound that was seen during the scan.
class TStarNotFound : public Error {
public:
    TStarNotFound(const std::string& what, long long best_t, double best_bound)
        : Error(Kind::TStarNotFound, what), best_t_(best_t), best_bound_(best_bound) {}

    long long best_t() const noexcept { return best_t_; }
    double best_bound() const noexcept { return best_bound_; }

private:
    long long best_t_;
    double best_bound_;
};

}  // namespace conngraph
