#include "expander/error.hpp"

namespace expander {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_regular: return "NonRegular";
    case Errc::half_loop: return "HalfLoop";
    case Errc::non_biregular: return "NonBiregular";
    case Errc::side_mismatch: return "SideMismatch";
    case Errc::degree_incompatible: return "DegreeIncompatible";
    case Errc::disconnected: return "Disconnected";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::even_power: return "EvenPower";
    case Errc::non_regular_out_degree: return "NonRegularOutDegree";
    case Errc::unknown_family: return "UnknownFamily";
    case Errc::size_exceeded: return "SizeExceeded";
    case Errc::unknown_code: return "UnknownCode";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::too_large: return "TooLarge";
    case Errc::rate_mismatch: return "RateMismatch";
    case Errc::divergent: return "Divergent";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::bad_input: return "BadInput";
    case Errc::io_error: return "IoError";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::invalid_element: return "InvalidElement";
    case Errc::non_symmetric: return "NonSymmetric";
    case Errc::level_budget: return "LevelBudget";
  }
  return "Error";
}

}  // namespace expander
