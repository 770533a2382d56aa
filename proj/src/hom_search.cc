/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/hom_search.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

using std::size_t;
using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace ftree
{
    auto Homomorphism::evaluate(const Word & w) const -> ElementId
    {
        if (source)
            source->check_word(w);
        ElementId cur = 0;
        for (auto l : w.letters()) {
            if (l.generator >= images.size())
                throw MalformedWordError("word references generator outside the homomorphism's source");
            auto x = images[l.generator];
            cur = target->mul(cur, l.sign > 0 ? x : target->inv(x));
        }
        return cur;
    }

    auto Homomorphism::satisfies_relators() const -> bool
    {
        for (auto & r : source->relators())
            if (evaluate(r) != 0)
                return false;
        return true;
    }

    auto plan_search(const Presentation & p) -> SearchPlan
    {
        uint32_t n = p.generator_count();
        const auto & relators = p.relators();
        vector<vector<char>> uses(relators.size(), vector<char>(n, 0));
        for (size_t r = 0 ; r < relators.size() ; ++r)
            for (auto l : relators[r].letters())
                uses[r][l.generator] = 1;

        SearchPlan plan;
        plan.checkable.assign(n + 1, {});
        vector<char> assigned(n, 0), done(relators.size(), 0);

        auto mark_checkable = [&] (size_t prefix) {
            for (size_t r = 0 ; r < relators.size() ; ++r) {
                if (done[r])
                    continue;
                bool ready = true;
                for (uint32_t g = 0 ; g < n && ready ; ++g)
                    ready = ! uses[r][g] || assigned[g];
                if (ready) {
                    done[r] = 1;
                    plan.checkable[prefix].push_back(r);
                }
            }
        };

        mark_checkable(0);
        for (uint32_t step = 0 ; step < n ; ++step) {
            // prefer relators completed now, then relators already started, then any use
            uint32_t best = n;
            std::tuple<size_t, size_t, size_t> best_score{ 0, 0, 0 };
            for (uint32_t g = 0 ; g < n ; ++g) {
                if (assigned[g])
                    continue;
                std::tuple<size_t, size_t, size_t> score{ 0, 0, 0 };
                for (size_t r = 0 ; r < relators.size() ; ++r) {
                    if (done[r] || ! uses[r][g])
                        continue;
                    size_t missing = 0, present = 0;
                    for (uint32_t h = 0 ; h < n ; ++h)
                        if (uses[r][h] && h != g)
                            ++(assigned[h] ? present : missing);
                    if (missing == 0)
                        ++std::get<0>(score);
                    if (present > 0)
                        ++std::get<1>(score);
                    ++std::get<2>(score);
                }
                if (best == n || score > best_score) {
                    best = g;
                    best_score = score;
                }
            }
            assigned[best] = 1;
            plan.order.push_back(best);
            mark_checkable(step + 1);
        }
        return plan;
    }

    namespace
    {
        struct CompiledRelator
        {
            vector<uint32_t> generators;
            vector<char> inverted;
        };

        class Backtracker
        {
            private:
                const FiniteGroup & _g;
                const SearchPlan & _plan;
                vector<vector<CompiledRelator>> _checks;
                vector<ElementId> _images;
                std::atomic<uint64_t> & _nodes;
                uint64_t _budget;
                uint64_t _local_nodes = 0;

                auto holds(const CompiledRelator & r) const -> bool
                {
                    ElementId cur = 0;
                    const auto n = _g.order();
                    const auto table = _g.table();
                    for (size_t i = 0 ; i < r.generators.size() ; ++i) {
                        auto x = _images[r.generators[i]];
                        if (r.inverted[i])
                            x = _g.inv(x);
                        cur = table[size_t{ cur } * n + x];
                    }
                    return cur == 0;
                }

                auto tick() -> void
                {
                    if (++_local_nodes == 4096) {
                        if (_nodes.fetch_add(_local_nodes) + _local_nodes > _budget)
                            throw ResourceError("homomorphism search exceeded node budget of " + std::to_string(_budget)
                                    + " (partial results discarded)");
                        _local_nodes = 0;
                    }
                }

            public:
                Backtracker(const Presentation & p, const FiniteGroup & g, const SearchPlan & plan,
                        std::atomic<uint64_t> & nodes, uint64_t budget) :
                    _g(g),
                    _plan(plan),
                    _images(p.generator_count(), 0),
                    _nodes(nodes),
                    _budget(budget)
                {
                    for (auto & prefix : plan.checkable) {
                        _checks.emplace_back();
                        for (auto r : prefix) {
                            CompiledRelator c;
                            for (auto l : p.relators().at(r).letters()) {
                                c.generators.push_back(l.generator);
                                c.inverted.push_back(l.sign < 0);
                            }
                            _checks.back().push_back(std::move(c));
                        }
                    }
                }

                auto flush() -> void
                {
                    if (_nodes.fetch_add(_local_nodes) + _local_nodes > _budget)
                        throw ResourceError("homomorphism search exceeded node budget of " + std::to_string(_budget)
                                + " (partial results discarded)");
                    _local_nodes = 0;
                }

                auto prefix_ok(size_t prefix) const -> bool
                {
                    for (auto & r : _checks[prefix])
                        if (! holds(r))
                            return false;
                    return true;
                }

                /// Depth-first search below a fixed assignment of the first `depth` generators.
                template <typename Visit_>
                auto run(size_t depth, Visit_ & visit) -> void
                {
                    if (depth == _plan.order.size()) {
                        visit(_images);
                        return;
                    }
                    auto gen = _plan.order[depth];
                    for (ElementId x = 0 ; x < _g.order() ; ++x) {
                        tick();
                        _images[gen] = x;
                        if (prefix_ok(depth + 1))
                            run(depth + 1, visit);
                    }
                }

                auto set_image(uint32_t gen, ElementId x) -> void { _images[gen] = x; }
        };

        /// Runs the search; the first assigned generator's images are split
        /// round-robin across workers. visit is called with each solution on
        /// the worker that found it, so it receives the worker index.
        template <typename Visit_>
        auto parallel_search(const Presentation & p, const GroupPtr & g, const SearchPlan & plan,
                const SearchOptions & options, Visit_ && visit) -> void
        {
            std::atomic<uint64_t> nodes{ 0 };
            {
                Backtracker root(p, *g, plan, nodes, options.node_budget);
                if (! root.prefix_ok(0))
                    return;
            }

            if (plan.order.empty()) {
                vector<ElementId> none;
                visit(0u, none);
                return;
            }

            unsigned threads = std::max(1u, std::min(options.threads, g->order()));
            vector<std::exception_ptr> errors(threads);
            auto work = [&] (unsigned worker) {
                try {
                    Backtracker b(p, *g, plan, nodes, options.node_budget);
                    auto sink = [&] (const vector<ElementId> & images) { visit(worker, images); };
                    for (ElementId x = worker ; x < g->order() ; x += threads) {
                        b.set_image(plan.order[0], x);
                        if (b.prefix_ok(1))
                            b.run(1, sink);
                    }
                    b.flush();
                }
                catch (...) {
                    errors[worker] = std::current_exception();
                }
            };

            if (threads == 1)
                work(0);
            else {
                vector<std::thread> pool;
                for (unsigned t = 0 ; t < threads ; ++t)
                    pool.emplace_back(work, t);
                for (auto & t : pool)
                    t.join();
            }
            for (auto & e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
    }

    auto enumerate_homomorphisms(const PresentationPtr & p, const GroupPtr & g, const SearchPlan & plan,
            const SearchOptions & options) -> vector<Homomorphism>
    {
        unsigned threads = std::max(1u, std::min(options.threads, g->order()));
        vector<vector<vector<ElementId>>> found(threads);
        parallel_search(*p, g, plan, options, [&] (unsigned worker, const vector<ElementId> & images) {
                found[worker].push_back(images);
                });

        vector<vector<ElementId>> all;
        for (auto & f : found)
            all.insert(all.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
        std::sort(all.begin(), all.end());

        vector<Homomorphism> result;
        result.reserve(all.size());
        for (auto & images : all)
            result.push_back(Homomorphism{ std::move(images), p, g });
        return result;
    }

    auto enumerate_homomorphisms(const PresentationPtr & p, const GroupPtr & g, const SearchOptions & options) -> vector<Homomorphism>
    {
        return enumerate_homomorphisms(p, g, plan_search(*p), options);
    }

    auto count_homomorphisms(const Presentation & p, const GroupPtr & g, const SearchOptions & options) -> uint64_t
    {
        unsigned threads = std::max(1u, std::min(options.threads, g->order()));
        vector<uint64_t> counts(threads, 0);
        parallel_search(p, g, plan_search(p), options, [&] (unsigned worker, const vector<ElementId> &) { ++counts[worker]; });
        uint64_t total = 0;
        for (auto c : counts)
            total += c;
        return total;
    }

    auto parse_orbit_mode(const string & s) -> OrbitMode
    {
        if (s == "none" || s == "raw")
            return OrbitMode::none;
        if (s == "conj" || s == "conjugation" || s == "inner")
            return OrbitMode::conjugation;
        if (s == "aut" || s == "automorphism")
            return OrbitMode::automorphism;
        throw PreconditionError("unknown orbit mode '" + s + "' (expected none, conj or aut)");
    }

    auto orbit_mode_name(OrbitMode m) -> string
    {
        switch (m) {
            case OrbitMode::none: return "none";
            case OrbitMode::conjugation: return "conj";
            case OrbitMode::automorphism: return "aut";
        }
        return "?";
    }

    auto classify(const vector<Homomorphism> & homs, const vector<vector<ElementId>> & automorphisms, OrbitMode mode) -> vector<HomOrbit>
    {
        vector<HomOrbit> orbits;
        if (mode == OrbitMode::none || homs.empty()) {
            for (auto & h : homs)
                orbits.push_back(HomOrbit{ h, 1, mode });
            return orbits;
        }

        std::map<vector<ElementId>, size_t> index;
        for (size_t i = 0 ; i < homs.size() ; ++i)
            index.emplace(homs[i].images, i);

        vector<char> seen(homs.size(), 0);
        vector<size_t> sorted(homs.size());
        for (size_t i = 0 ; i < homs.size() ; ++i)
            sorted[i] = i;
        std::sort(sorted.begin(), sorted.end(), [&] (size_t a, size_t b) { return homs[a].images < homs[b].images; });

        for (auto i : sorted) {
            if (seen[i])
                continue;
            size_t size = 0;
            vector<ElementId> image(homs[i].images.size());
            for (auto & phi : automorphisms) {
                for (size_t k = 0 ; k < image.size() ; ++k)
                    image[k] = phi[homs[i].images[k]];
                auto it = index.find(image);
                if (it == index.end())
                    throw PreconditionError("homomorphism list is not closed under the automorphism action");
                if (! seen[it->second]) {
                    seen[it->second] = 1;
                    ++size;
                }
            }
            orbits.push_back(HomOrbit{ homs[i], size, mode });
        }
        return orbits;
    }

    auto classify(const vector<Homomorphism> & homs, const FiniteGroup & g, OrbitMode mode) -> vector<HomOrbit>
    {
        switch (mode) {
            case OrbitMode::none: return classify(homs, vector<vector<ElementId>>{}, mode);
            case OrbitMode::conjugation: return classify(homs, inner_automorphisms(g), mode);
            case OrbitMode::automorphism: return classify(homs, automorphism_group(g), mode);
        }
        return {};
    }

    auto is_surjective(const Homomorphism & h) -> bool
    {
        return subgroup_closure(h.target, h.images).is_whole_group();
    }

    auto restrict_along(const Homomorphism & h, std::span<const Word> words) -> vector<ElementId>
    {
        vector<ElementId> result;
        for (auto & w : words)
            result.push_back(h.evaluate(w));
        return result;
    }
}
