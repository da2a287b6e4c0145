#ifndef FREEGROUP_ERRORS_HPP_
#define FREEGROUP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace freegroup {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed word text.
  class SyntaxError : public Error {
   public:
    SyntaxError(std::string const& msg, std::size_t pos)
        : Error(msg + " at offset " + std::to_string(pos)), _pos(pos) {}

    [[nodiscard]] std::size_t position() const noexcept {
      return _pos;
    }

   private:
    std::size_t _pos;
  };

  // A generator index exceeds the ambient rank, or two objects disagree on it.
  class RankError : public Error {
   public:
    using Error::Error;
  };

  // Malformed graph JSON.
  class GraphFormatError : public Error {
   public:
    using Error::Error;
  };

  class NotAdmissible : public Error {
   public:
    using Error::Error;
  };

  // An iterative solver hit its iteration cap.
  class ConvergenceError : public Error {
   public:
    ConvergenceError(std::string const& msg, double residual)
        : Error(msg + " (residual " + std::to_string(residual) + ")"),
          _residual(residual) {}

    [[nodiscard]] double residual() const noexcept {
      return _residual;
    }

   private:
    double _residual;
  };

  // The input violates a hypothesis of the requested computation.
  class HypothesisError : public Error {
   public:
    using Error::Error;
  };

  // A boomerang stage could not find an acceptable power within its cap.
  class SearchExhausted : public Error {
   public:
    SearchExhausted(std::string const& msg, double best_increment)
        : Error(msg), _best(best_increment) {}

    [[nodiscard]] double best_increment() const noexcept {
      return _best;
    }

   private:
    double _best;
  };

  // The constructed tower left the prescribed neighbourhood of the start.
  class NeighborhoodViolation : public Error {
   public:
    using Error::Error;
  };

}  // namespace freegroup

#endif  // FREEGROUP_ERRORS_HPP_
