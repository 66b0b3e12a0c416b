#include <memory>

#include "discovery.hpp"
#include "errors.hpp"

namespace kac {

MixedGraph learn_from_correlation(const PseudoCorrelationMatrix& corr, std::size_t n, const SearchConfig& cfg,
                                  bool verbose) {
    cfg.validate();
    auto ctx = std::make_shared<const CiContext>(corr.values, n, cfg.alpha);
    const IndependenceTest test = make_fisher_z_test(ctx, corr.labels, verbose);
    if (cfg.algorithm == Algorithm::Fci) return fci_search(test, corr.labels, cfg).pag;
    const SkeletonResult sk = pc_skeleton(test, corr.labels, cfg);
    return apply_meek_rules(orient_v_structures(sk.graph, sk.sepsets));
}

MixedGraph kapc(const Dataset& data, const KernelParams& params, const SearchConfig& cfg, const LearnOptions& options) {
    SearchConfig pc = cfg;
    pc.algorithm = Algorithm::Pc;
    const auto corr = pseudo_correlation_matrix(data, params, {options.centering});
    return learn_from_correlation(corr, data.rows(), pc, options.verbose);
}

MixedGraph kafci(const Dataset& data, const KernelParams& params, const SearchConfig& cfg,
                 const LearnOptions& options) {
    SearchConfig fci = cfg;
    fci.algorithm = Algorithm::Fci;
    const auto corr = pseudo_correlation_matrix(data, params, {options.centering});
    return learn_from_correlation(corr, data.rows(), fci, options.verbose);
}

}  // namespace kac
