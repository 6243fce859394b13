#include "kms/coding.hpp"

#include <algorithm>
#include <string>

namespace kms::coding {

ABWord to_ab(WordView k) {
    if (k.size() < 2) {
        throw SizeError("to_ab needs a k-word of length >= 2");
    }
    ABWord m;
    m.reserve(k.size() - 1);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        m.push_back(k[i] == k[i + 1] ? AB::a : AB::b);
    }
    return m;
}

Word from_ab(const ABWord& m, Symbol k0) {
    Word k;
    k.reserve(m.size() + 1);
    k.push_back(k0);
    for (AB letter : m) {
        k.push_back(letter == AB::a ? k.back() : other(k.back()));
    }
    return k;
}

AlphaBetaCode to_alphabeta(const ABWord& m) {
    AlphaBetaCode code;
    const std::size_t paired = m.size() - m.size() % 2;
    for (std::size_t i = 0; i < paired; i += 2) {
        const AB first = m[i];
        const AB second = m[i + 1];
        if (first == AB::a && second == AB::a) {
            continue;
        }
        if (first == AB::a && second == AB::b) {
            code.w.push_back(Greek::alpha);
        } else if (first == AB::b && second == AB::a) {
            code.w.push_back(Greek::beta);
        } else {
            // bb = b aa b = beta alpha
            code.w.push_back(Greek::beta);
            code.w.push_back(Greek::alpha);
        }
    }
    if (paired != m.size()) {
        code.held_back = m.back();
    }
    return code;
}

AlphaBetaWord reduce(const AlphaBetaWord& w) {
    AlphaBetaWord stack;
    stack.reserve(w.size());
    for (Greek letter : w) {
        if (!stack.empty() && stack.back() == letter) {
            stack.pop_back();
        } else {
            stack.push_back(letter);
        }
    }
    return stack;
}

std::string format_ab(const ABWord& m) {
    std::string out;
    out.reserve(m.size());
    for (AB letter : m) out.push_back(static_cast<char>(letter));
    return out;
}

ABWord parse_ab(std::string_view text) {
    ABWord m;
    m.reserve(text.size());
    for (char c : text) {
        if (c == 'a') {
            m.push_back(AB::a);
        } else if (c == 'b') {
            m.push_back(AB::b);
        } else {
            throw DomainError("m-word must be over {a,b}: '" + std::string(text) + "'");
        }
    }
    return m;
}

std::string format_greek(const AlphaBetaWord& w) {
    std::string out;
    for (Greek letter : w) out += (letter == Greek::alpha ? "α" : "β");
    return out;
}

std::string_view status_name(CoordinateStatus status) noexcept {
    switch (status) {
        case CoordinateStatus::resolved: return "resolved";
        case CoordinateStatus::unresolved: return "unresolved";
        case CoordinateStatus::inconsistent: return "inconsistent";
    }
    return "unresolved";
}

std::size_t ConjugacyOutput::resolved_count() const {
    return static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(), [](const Coordinate& c) {
        return c.status == CoordinateStatus::resolved;
    }));
}

int propagate_label(int shifted_label, Symbol x0, Symbol x1) noexcept {
    // A point of A starting with s: prepending the other symbol stays in A, prepending s
    // lands in B; for B the roles swap.
    return x0 == x1 ? 1 - shifted_label : shifted_label;
}

ConjugacyOutput conjugacy_h(const ModelParams& params, WordView word, double epsilon, int max_depth,
                            int coordinates) {
    if (coordinates < 0 || max_depth < 1) {
        throw DomainError("conjugacy_h needs coordinates >= 0 and max_depth >= 1");
    }
    if (static_cast<std::size_t>(coordinates) + static_cast<std::size_t>(max_depth) > word.size()) {
        throw SizeError("conjugacy_h: coordinates + max_depth exceeds the prefix length");
    }

    ConjugacyOutput out;
    out.coords.resize(static_cast<std::size_t>(coordinates));
    for (int j = 0; j < coordinates; ++j) {
        const auto window =
            word.subspan(static_cast<std::size_t>(j), static_cast<std::size_t>(max_depth) + 1);
        const jacobian::Classification cls = jacobian::classify(params, window, epsilon, max_depth);
        Coordinate& c = out.coords[static_cast<std::size_t>(j)];
        c.depth_used = cls.depth_used;
        if (cls.label == jacobian::ClassLabel::Unresolved) continue;
        c.value = cls.label == jacobian::ClassLabel::A ? 0 : 1;
        c.status = CoordinateStatus::resolved;
    }

    // Consistency pass over adjacent resolved pairs.
    std::vector<bool> broken(out.coords.size(), false);
    for (std::size_t j = 0; j + 1 < out.coords.size(); ++j) {
        const Coordinate& here = out.coords[j];
        const Coordinate& next = out.coords[j + 1];
        if (here.status != CoordinateStatus::resolved || next.status != CoordinateStatus::resolved) {
            continue;
        }
        if (propagate_label(next.value, word[j], word[j + 1]) != here.value) {
            broken[j] = true;
            broken[j + 1] = true;
        }
    }
    for (std::size_t j = 0; j < out.coords.size(); ++j) {
        if (broken[j]) {
            out.coords[j].status = CoordinateStatus::inconsistent;
            out.coords[j].value = -1;
        }
    }
    return out;
}

}  // namespace kms::coding
