#include "torquo/error.hpp"
#include "torquo/fan.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace torquo {

namespace {

std::string describe(const RaySet& cone)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < cone.size(); ++i) out << (i ? "," : "") << cone[i];
    out << "}";
    return out.str();
}

void require_valid(const Fan& fan, const std::string& stage)
{
    auto report = validate(fan, false);
    if (!report.geometric_ok()) throw Error(ErrorCode::FanNotValid, stage + ": " + report.witness);
}

RaySet sorted(RaySet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

Fan point_fan() { return Fan(0, {}, {RaySet{}}); }

DivisorFan divisor_fan(const Fan& fan, int y)
{
    if (y < 0 || static_cast<std::size_t>(y) >= fan.num_rays())
        throw Error(ErrorCode::InvalidArgument, "ray index " + std::to_string(y) + " out of range");
    LatticeProjection projection = quotient_projection(fan.rank(), {fan.ray(y)});

    std::vector<int> source;
    for (std::size_t x = 0; x < fan.num_rays(); ++x) {
        if (static_cast<int>(x) == y) continue;
        if (fan.contains_cone(sorted({y, static_cast<int>(x)}))) source.push_back(static_cast<int>(x));
    }
    std::map<int, int> new_index;
    std::vector<LatticeVector> rays;
    for (int x : source) {
        LatticeVector image = primitivize(projection.apply(fan.ray(x)));
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (rays[k] == image)
                throw Error(ErrorCode::InternalConsistency, "two rays of the star of " + std::to_string(y) + " project together");
        new_index[x] = static_cast<int>(rays.size());
        rays.push_back(std::move(image));
    }
    std::vector<RaySet> cones;
    for (auto k : fan.max_cones_containing({y})) {
        RaySet cone;
        for (int r : fan.max_cones()[k])
            if (r != y) cone.push_back(new_index.at(r));
        cones.push_back(std::move(cone));
    }
    return {Fan(fan.rank() - 1, std::move(rays), std::move(cones)), std::move(projection), std::move(source)};
}

Fan product(const Fan& a, const Fan& b)
{
    const std::size_t n = a.rank() + b.rank();
    std::vector<LatticeVector> rays;
    for (const auto& r : a.rays()) {
        IntVector c = r.coords();
        c.resize(n, 0);
        rays.emplace_back(std::move(c));
    }
    for (const auto& r : b.rays()) {
        IntVector c(a.rank(), 0);
        c.insert(c.end(), r.coords().begin(), r.coords().end());
        rays.emplace_back(std::move(c));
    }
    const int offset = static_cast<int>(a.num_rays());
    std::vector<RaySet> cones;
    for (const auto& ca : a.max_cones())
        for (const auto& cb : b.max_cones()) {
            RaySet cone = ca;
            for (int r : cb) cone.push_back(r + offset);
            cones.push_back(std::move(cone));
        }
    return Fan(n, std::move(rays), std::move(cones));
}

Fan star_subdivision(const Fan& fan, const RaySet& cone_in)
{
    RaySet cone = sorted(cone_in);
    if (!fan.contains_cone(cone)) throw Error(ErrorCode::ConeNotInFan, "cone " + describe(cone) + " is not in the fan");
    if (cone.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "star subdivision needs a cone of dimension at least 2");

    RatVector sum(fan.rank());
    for (int r : cone)
        for (std::size_t i = 0; i < fan.rank(); ++i) sum[i] += Rational(fan.ray(r)[i]);
    std::vector<LatticeVector> rays = fan.rays();
    const int fresh = static_cast<int>(rays.size());
    rays.push_back(primitivize(sum));

    std::vector<RaySet> cones;
    for (const auto& sigma : fan.max_cones()) {
        if (!is_subset(cone, sigma)) {
            cones.push_back(sigma);
            continue;
        }
        for (int r : cone) {
            RaySet piece = set_minus(sigma, {r});
            piece.push_back(fresh);
            cones.push_back(std::move(piece));
        }
    }
    Fan out(fan.rank(), std::move(rays), std::move(cones));
    require_valid(out, "star subdivision of " + describe(cone));
    return out;
}

Fan flip(const Fan& fan, const RaySet& negative_in)
{
    const RaySet negative = sorted(negative_in);
    if (negative.size() < 2) throw Error(ErrorCode::WrongLocalStructure, "a flip needs at least two rays on the negative side");
    if (!fan.contains_cone(negative))
        throw Error(ErrorCode::WrongLocalStructure, "negative side " + describe(negative) + " is not a cone of the fan");

    const auto star = fan.max_cones_containing(negative);
    RaySet link_rays;
    for (auto k : star) link_rays = set_union(link_rays, set_minus(fan.max_cones()[k], negative));
    if (link_rays.size() > 20) throw Error(ErrorCode::WrongLocalStructure, "star of the negative side is too large");

    struct Candidate {
        RaySet positive;
        std::map<RaySet, RaySet> links;  // link -> positive rays seen with it
    };
    std::vector<RaySet> circuits;
    std::vector<Candidate> matches;
    const std::size_t subsets = std::size_t{1} << link_rays.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        RaySet positive;
        for (std::size_t i = 0; i < link_rays.size(); ++i)
            if (mask & (std::size_t{1} << i)) positive.push_back(link_rays[i]);
        if (positive.size() + negative.size() > fan.rank() + 1) continue;

        RaySet support = set_union(negative, positive);
        RatMatrix m(fan.rank(), support.size());
        for (std::size_t c = 0; c < support.size(); ++c)
            for (std::size_t r = 0; r < fan.rank(); ++r) m(r, c) = Rational(fan.ray(support[c])[r]);
        auto kernel = kernel_basis(m);
        if (kernel.size() != 1) continue;
        const RatVector& k = kernel[0];
        int orientation = 0;
        bool ok = true;
        for (std::size_t c = 0; c < support.size() && ok; ++c) {
            const bool on_negative = std::binary_search(negative.begin(), negative.end(), support[c]);
            const int s = sgn(k[c]) * (on_negative ? -1 : 1);
            if (s == 0) ok = false;
            else if (orientation == 0) orientation = s;
            else if (s != orientation) ok = false;
        }
        if (!ok) continue;
        circuits.push_back(positive);

        // Every cone of the star must be (circuit minus one positive ray) + link, and each
        // link must appear with every positive ray omitted exactly once.
        Candidate cand{positive, {}};
        bool local = true;
        for (auto idx : star) {
            const auto& sigma = fan.max_cones()[idx];
            RaySet present;
            std::set_intersection(sigma.begin(), sigma.end(), positive.begin(), positive.end(), std::back_inserter(present));
            if (present.size() + 1 != positive.size()) {
                local = false;
                break;
            }
            RaySet missing = set_minus(positive, present);
            RaySet link = set_minus(set_minus(sigma, negative), positive);
            auto& seen = cand.links[link];
            if (std::binary_search(seen.begin(), seen.end(), missing[0])) {
                local = false;
                break;
            }
            seen = set_union(seen, missing);
        }
        if (local)
            for (const auto& [link, seen] : cand.links)
                if (seen != positive) local = false;
        if (local) matches.push_back(std::move(cand));
    }

    if (circuits.empty())
        throw Error(ErrorCode::NotACircuit, "no circuit through the star of " + describe(negative) +
                                                " has exactly these rays on its negative side");
    if (matches.size() != 1)
        throw Error(ErrorCode::WrongLocalStructure,
                    std::to_string(matches.size()) + " circuits match the local triangulation around " + describe(negative));

    const auto& chosen = matches.front();
    std::vector<RaySet> cones;
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k)
        if (!std::binary_search(star.begin(), star.end(), k)) cones.push_back(fan.max_cones()[k]);
    const RaySet circuit = set_union(negative, chosen.positive);
    for (const auto& [link, seen] : chosen.links)
        for (int w : negative) cones.push_back(set_union(set_minus(circuit, {w}), link));

    Fan out(fan.rank(), fan.rays(), std::move(cones));
    require_valid(out, "flip of " + describe(negative));
    return out;
}

}  // namespace torquo
