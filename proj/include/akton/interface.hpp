#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace akton {

// one vertical slot of an interface, read top to bottom
enum class slot : std::uint8_t { pin, gap };

using interface = std::vector<slot>;

inline interface pins(int n) { return interface(static_cast<size_t>(n), slot::pin); }

inline interface concat(const interface& a, const interface& b) {
    interface r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline int pin_count(const interface& i) {
    int n = 0;
    for (slot s : i)
        if (s == slot::pin) n++;
    return n;
}

inline bool all_gaps(const interface& i) {
    for (slot s : i)
        if (s == slot::pin) return false;
    return true;
}

// "Pin/Gap/Pin"; the empty interface prints as "()"
inline std::string to_string(const interface& i) {
    if (i.empty()) return "()";
    std::string r;
    for (slot s : i) {
        if (!r.empty()) r += '/';
        r += (s == slot::pin) ? "Pin" : "Gap";
    }
    return r;
}

} // namespace akton
