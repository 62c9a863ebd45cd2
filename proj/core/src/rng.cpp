#include "swarmform/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace swarmform {

double uniform01(Engine& eng) {
    boost::random::uniform_01<double> dist;
    return dist(eng);
}

double standard_normal(Engine& eng) {
    boost::random::normal_distribution<double> dist(0.0, 1.0);
    return dist(eng);
}

}  // namespace swarmform
