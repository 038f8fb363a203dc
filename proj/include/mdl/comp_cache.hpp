#pragma once

// Persistent memo of exact NML parametric complexities. Text format, one
// line "m n lognat_value" with 17 significant digits; missing entries are
// computed and appended. The cache can only change runtime, never results.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "mdl/multinomial.hpp"

namespace mdl {

class CompCache {
public:
    CompCache() = default;

    explicit CompCache(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_);
        std::uint64_t m, n;
        double v;
        while (in >> m >> n >> v) map_[{m, n}] = v;
    }

    // ln of the Shtarkov sum for (n, m).
    double lognat(std::uint64_t n, std::uint64_t m) {
        {
            std::scoped_lock lock(mu_);
            auto it = map_.find({m, n});
            if (it != map_.end()) return it->second;
        }
        double v = nml_comp_exact_m(n, m).value * M_LN2;
        std::scoped_lock lock(mu_);
        if (map_.emplace(std::pair{m, n}, v).second && !path_.empty()) {
            char line[96];
            std::snprintf(line, sizeof line, "%llu %llu %.17g\n",
                          static_cast<unsigned long long>(m),
                          static_cast<unsigned long long>(n), v);
            std::ofstream out(path_, std::ios::app);
            out << line;
        }
        return v;
    }

    Bits bits(std::uint64_t n, std::uint64_t m) {
        return Bits{lognat(n, m) / M_LN2};
    }

private:
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> map_;
    std::mutex mu_;
    std::string path_;
};

}  // namespace mdl
