#include "memevo/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace memevo {

std::string Rng::state() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
}

void Rng::set_state(const std::string& text) {
    std::istringstream in(text);
    in >> engine_;
    if (!in) throw std::invalid_argument("malformed random engine state");
}

}  // namespace memevo
