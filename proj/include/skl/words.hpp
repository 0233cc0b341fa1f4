#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace skl {

// Words in the free algebra on x, y, z are packed base-3, most significant
// digit = first letter (x=0, y=1, z=2).  Within one degree the numeric order
// of codes is the lexicographic order with x < y < z.  Degree must be carried
// alongside the code: leading x letters are leading zero digits.
using Word = std::uint32_t;

inline constexpr int kMaxDegree = 12;

inline constexpr std::array<std::uint32_t, kMaxDegree + 1> kPow3 = {
    1,    3,     9,     27,     81,     243,    729,
    2187, 6561,  19683, 59049,  177147, 531441};

inline Word concat_words(Word u, Word v, int deg_v) {
    return u * kPow3[deg_v] + v;
}

// i-th letter, 0-based from the left
inline int word_letter(Word w, int deg, int i) {
    return static_cast<int>((w / kPow3[deg - 1 - i]) % 3);
}

inline Word word_reversed(Word w, int deg) {
    Word out = 0;
    for (int i = 0; i < deg; ++i) out = out * 3 + static_cast<Word>(word_letter(w, deg, deg - 1 - i));
    return out;
}

// the generator swap x <-> y, z fixed
inline Word word_swapped_xy(Word w, int deg) {
    Word out = 0;
    for (int i = 0; i < deg; ++i) {
        int l = word_letter(w, deg, i);
        out = out * 3 + static_cast<Word>(l == 2 ? 2 : 1 - l);
    }
    return out;
}

inline std::string word_string(Word w, int deg) {
    static const char letters[3] = {'x', 'y', 'z'};
    if (deg == 0) return "1";
    std::string s;
    for (int i = 0; i < deg; ++i) s += letters[word_letter(w, deg, i)];
    return s;
}

} // namespace skl
