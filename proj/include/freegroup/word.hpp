#ifndef FREEGROUP_WORD_HPP_
#define FREEGROUP_WORD_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freegroup {

  // A generator a_i or its inverse.  Letters are totally ordered by
  // ordinal(): a1 < a1^-1 < a2 < a2^-1 < ...; the same order drives the
  // length-lexicographic enumeration and canonical graph numbering.
  class Letter {
   public:
    constexpr Letter(int index, int sign) : _value(sign < 0 ? -index : index) {}

    static constexpr Letter from_ordinal(int ordinal) {
      return Letter(ordinal / 2 + 1, (ordinal % 2 == 0) ? 1 : -1);
    }

    [[nodiscard]] constexpr int index() const noexcept {
      return _value < 0 ? -_value : _value;
    }

    [[nodiscard]] constexpr int sign() const noexcept {
      return _value < 0 ? -1 : 1;
    }

    [[nodiscard]] constexpr int ordinal() const noexcept {
      return 2 * (index() - 1) + (_value < 0 ? 1 : 0);
    }

    [[nodiscard]] constexpr Letter inverse() const noexcept {
      return Letter(index(), -sign());
    }

    constexpr bool operator==(Letter const&) const = default;

    constexpr std::strong_ordering operator<=>(Letter const& that) const {
      return ordinal() <=> that.ordinal();
    }

   private:
    int _value;
  };

  [[nodiscard]] std::string to_string(Letter x);

  // A freely reduced word.  Every constructor reduces its input, so a Word
  // never contains an adjacent pair x x^-1.
  class Word {
   public:
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters)
        : Word(std::vector<Letter>(letters)) {}

    [[nodiscard]] std::size_t size() const noexcept {
      return _letters.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _letters.empty();
    }
    [[nodiscard]] Letter operator[](std::size_t i) const {
      return _letters[i];
    }
    [[nodiscard]] Letter front() const {
      return _letters.front();
    }
    [[nodiscard]] Letter back() const {
      return _letters.back();
    }
    [[nodiscard]] const_iterator begin() const noexcept {
      return _letters.begin();
    }
    [[nodiscard]] const_iterator end() const noexcept {
      return _letters.end();
    }
    [[nodiscard]] std::span<Letter const> letters() const noexcept {
      return _letters;
    }

    // Largest generator index used, 0 for the identity.
    [[nodiscard]] int max_index() const noexcept;

    // Letters [pos, pos + len).
    [[nodiscard]] Word subword(std::size_t pos, std::size_t len) const;

    bool operator==(Word const&) const = default;

    // Length-lexicographic.
    std::strong_ordering operator<=>(Word const& that) const;

   private:
    std::vector<Letter> _letters;
  };

  // Spaced rendering, e.g. "a1 a2^-1"; the identity renders as "".
  [[nodiscard]] std::string to_string(Word const& w);

  // Parses either the spaced form ("a1 a2^-1", whitespace optional) or, when
  // rank <= 26, the compact form ("aB" = a1 a2^-1), and freely reduces.
  // Throws SyntaxError or RankError.
  [[nodiscard]] Word parse_reduce(std::string_view text, int rank);

  struct CyclicReduction {
    Word core;
    Word conjugator;
  };

  // w == conjugator * core * conjugator^-1 with core cyclically reduced and
  // the conjugator maximal.
  [[nodiscard]] CyclicReduction cyclic_reduce(Word const& w);

  [[nodiscard]] Word concat(Word const& u, Word const& v);
  [[nodiscard]] Word inverse(Word const& w);
  [[nodiscard]] Word power(Word const& w, long long n);

  [[nodiscard]] inline Word operator*(Word const& u, Word const& v) {
    return concat(u, v);
  }

  // g * w * g^-1
  [[nodiscard]] Word conjugate(Word const& w, Word const& g);

  // Walks F_d \ {1} in length-lexicographic order with the letter order of
  // Letter::ordinal().  Deterministic, never repeats, never terminates.
  class Enumeration {
   public:
    explicit Enumeration(int rank);

    [[nodiscard]] int rank() const noexcept {
      return _rank;
    }

    // The word that the next call to next() returns.
    [[nodiscard]] Word peek() const;
    Word next();

   private:
    void advance();

    int _rank;
    std::vector<int> _cursor;  // ordinals of the pending word
  };

  // First n nontrivial reduced words of F_rank in enumeration order.
  [[nodiscard]] std::vector<Word> enumerate(int rank, std::size_t n);

}  // namespace freegroup

#endif  // FREEGROUP_WORD_HPP_
