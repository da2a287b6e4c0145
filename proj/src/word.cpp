#include "freegroup/word.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "freegroup/errors.hpp"

namespace freegroup {

  std::string to_string(Letter x) {
    std::string out = "a" + std::to_string(x.index());
    if (x.sign() < 0) {
      out += "^-1";
    }
    return out;
  }

  namespace {
    // Appends x to a reduced buffer, cancelling against the last letter.
    void push_reduced(std::vector<Letter>& buf, Letter x) {
      if (!buf.empty() && buf.back() == x.inverse()) {
        buf.pop_back();
      } else {
        buf.push_back(x);
      }
    }
  }  // namespace

  Word::Word(std::vector<Letter> letters) {
    _letters.reserve(letters.size());
    for (Letter x : letters) {
      push_reduced(_letters, x);
    }
  }

  int Word::max_index() const noexcept {
    int result = 0;
    for (Letter x : _letters) {
      result = std::max(result, x.index());
    }
    return result;
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    pos = std::min(pos, _letters.size());
    len = std::min(len, _letters.size() - pos);
    Word out;
    out._letters.assign(_letters.begin() + pos, _letters.begin() + pos + len);
    return out;
  }

  std::strong_ordering Word::operator<=>(Word const& that) const {
    if (auto c = size() <=> that.size(); c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        _letters.begin(), _letters.end(), that._letters.begin(),
        that._letters.end());
  }

  std::string to_string(Word const& w) {
    std::string out;
    for (Letter x : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += to_string(x);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  Word parse_reduce(std::string_view text, int rank) {
    std::vector<Letter> letters;
    std::size_t i = 0;
    auto const n = text.size();
    auto is_digit = [&](std::size_t j) {
      return j < n && std::isdigit(static_cast<unsigned char>(text[j]));
    };
    while (i < n) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == 'a' && is_digit(i + 1)) {
        std::size_t start = i;
        ++i;
        if (text[i] == '0') {
          throw SyntaxError("generator index may not start with 0", i);
        }
        long long index = 0;
        while (is_digit(i)) {
          index = index * 10 + (text[i] - '0');
          if (index > 1'000'000) {
            throw RankError("generator index too large");
          }
          ++i;
        }
        int sign = 1;
        if (text.substr(i, 3) == "^-1") {
          sign = -1;
          i += 3;
        } else if (i < n && text[i] == '^') {
          throw SyntaxError("only the exponent ^-1 is allowed", i);
        }
        if (index > rank) {
          throw RankError("generator a" + std::to_string(index) + " at offset "
                          + std::to_string(start) + " exceeds rank "
                          + std::to_string(rank));
        }
        letters.emplace_back(static_cast<int>(index), sign);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        if (rank > 26) {
          throw SyntaxError("compact letters need rank <= 26", i);
        }
        bool upper = std::isupper(static_cast<unsigned char>(c));
        int index = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
        if (index > rank) {
          throw RankError(std::string("compact letter '") + c + "' exceeds rank "
                          + std::to_string(rank));
        }
        letters.emplace_back(index, upper ? -1 : 1);
        ++i;
        continue;
      }
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    return Word(std::move(letters));
  }

  ////////////////////////////////////////////////////////////////////////
  // Group operations
  ////////////////////////////////////////////////////////////////////////

  CyclicReduction cyclic_reduce(Word const& w) {
    std::size_t lo = 0;
    std::size_t hi = w.size();
    while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
      ++lo;
      --hi;
    }
    return {w.subword(lo, hi - lo), w.subword(0, lo)};
  }

  Word concat(Word const& u, Word const& v) {
    std::vector<Letter> buf(u.begin(), u.end());
    buf.reserve(u.size() + v.size());
    for (Letter x : v) {
      push_reduced(buf, x);
    }
    return Word(std::move(buf));
  }

  Word inverse(Word const& w) {
    std::vector<Letter> buf;
    buf.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      buf.push_back(it->inverse());
    }
    return Word(std::move(buf));
  }

  Word power(Word const& w, long long n) {
    if (n == 0 || w.empty()) {
      return Word();
    }
    if (n < 0) {
      return inverse(power(w, -n));
    }
    auto [core, conj] = cyclic_reduce(w);
    // core is cyclically reduced, so core^n needs no cancellation
    std::vector<Letter> buf(conj.begin(), conj.end());
    buf.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
      buf.insert(buf.end(), core.begin(), core.end());
    }
    auto tail = inverse(conj);
    buf.insert(buf.end(), tail.begin(), tail.end());
    return Word(std::move(buf));
  }

  Word conjugate(Word const& w, Word const& g) {
    return concat(concat(g, w), inverse(g));
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  Enumeration::Enumeration(int rank) : _rank(rank), _cursor{0} {
    if (rank < 1) {
      throw RankError("enumeration needs rank >= 1");
    }
  }

  Word Enumeration::peek() const {
    std::vector<Letter> letters;
    letters.reserve(_cursor.size());
    for (int o : _cursor) {
      letters.push_back(Letter::from_ordinal(o));
    }
    return Word(std::move(letters));
  }

  Word Enumeration::next() {
    Word w = peek();
    advance();
    return w;
  }

  void Enumeration::advance() {
    int const alphabet = 2 * _rank;
    // smallest ordinal allowed after `prev` (-1 for none)
    auto smallest_after = [](int prev) { return prev == 1 ? 1 : 0; };
    auto k = static_cast<std::ptrdiff_t>(_cursor.size()) - 1;
    for (; k >= 0; --k) {
      int prev = k > 0 ? _cursor[k - 1] : -1;
      int o = _cursor[k] + 1;
      while (o < alphabet && prev >= 0 && o == (prev ^ 1)) {
        ++o;
      }
      if (o < alphabet) {
        _cursor[k] = o;
        break;
      }
    }
    if (k < 0) {
      _cursor.assign(_cursor.size() + 1, 0);
      return;
    }
    for (auto j = static_cast<std::size_t>(k) + 1; j < _cursor.size(); ++j) {
      _cursor[j] = smallest_after(_cursor[j - 1]);
    }
  }

  std::vector<Word> enumerate(int rank, std::size_t n) {
    Enumeration e(rank);
    std::vector<Word> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(e.next());
    }
    return out;
  }

}  // namespace freegroup
