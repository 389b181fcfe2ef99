#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "agemec/nn/checkpoint.hpp"
#include "agemec/nn/network.hpp"

using namespace agemec;
using namespace agemec::nn;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Central finite differences of a scalar projection of the network
/// output, against the analytic parameter and input gradients. A ReLU
/// preactivation inside (-eps, eps) makes the stencil straddle the kink;
/// those coordinates are re-checked with a 100x tighter step, which a real
/// backprop bug would still fail.
void check_gradients(Network& net, const Tensor& input, Rng& rng, double tol = 1e-4) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);

    Tensor out = net.forward(input);
    Tensor proj = zeros_like(out);
    for (auto& v : proj.data) v = d(rng);

    net.zero_grads();
    net.forward(input);
    Tensor dinput = net.backward(proj);
    ParamVector analytic;
    net.export_grads(analytic);

    ParamVector theta;
    net.export_params(theta);
    auto loss_at = [&](const ParamVector& p, const Tensor& x) {
        net.import_params(p, 0);
        Tensor y = net.forward(x);
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += proj.data[i] * y.data[i];
        return s;
    };
    auto central = [&](auto perturb, double eps) {
        auto [hi, lo] = perturb(eps);
        return (hi - lo) / (2 * eps);
    };

    for (std::size_t i = 0; i < theta.size(); ++i) {
        auto perturb = [&](double eps) {
            ParamVector hi = theta, lo = theta;
            hi[i] += eps;
            lo[i] -= eps;
            return std::pair{loss_at(hi, input), loss_at(lo, input)};
        };
        double numeric = central(perturb, 1e-4);
        if (rel_err(numeric, analytic[i]) > tol) numeric = central(perturb, 1e-6);
        REQUIRE(rel_err(numeric, analytic[i]) <= tol);
    }
    net.import_params(theta, 0);

    for (std::size_t i = 0; i < input.size(); ++i) {
        auto perturb = [&](double eps) {
            Tensor hi = input, lo = input;
            hi.data[i] += eps;
            lo.data[i] -= eps;
            return std::pair{loss_at(theta, hi), loss_at(theta, lo)};
        };
        double numeric = central(perturb, 1e-4);
        if (rel_err(numeric, dinput.data[i]) > tol) numeric = central(perturb, 1e-6);
        REQUIRE(rel_err(numeric, dinput.data[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("identity dense layer passes input through", "[nn]") {
    Rng rng = make_stream(1, 0);
    Network net;
    net.add(std::make_unique<Dense>(3, 3, rng));
    ParamVector ident = {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
    net.import_params(ident, 0);
    Tensor x({3}, {0.3, -1.5, 2.0});
    CHECK(net.forward(x).data == x.data);
}

TEST_CASE("softmax output is a strict simplex point", "[nn]") {
    Rng rng = make_stream(2, 0);
    Network net;
    net.add(std::make_unique<Dense>(4, 6, rng)).add(std::make_unique<Softmax>());
    Tensor x({4}, {1.0, -3.0, 0.5, 2.0});
    Tensor y = net.forward(x);
    double sum = 0.0;
    for (double v : y.data) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        sum += v;
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("average pooling a constant map returns the constant", "[nn]") {
    AvgPool pool(2, 2);
    Tensor x({3, 4, 4});
    for (auto& v : x.data) v = 2.5;
    Tensor y = pool.forward(x);
    REQUIRE(y.shape == std::vector<int>{3, 2, 2});
    for (double v : y.data) CHECK(v == Catch::Approx(2.5));

    AvgPool collapse(2, 2, true);
    Tensor z = collapse.forward(x);
    REQUIRE(z.shape == std::vector<int>{1, 2, 2});
    for (double v : z.data) CHECK(v == Catch::Approx(2.5));
}

TEST_CASE("dense gradients match finite differences over 20 seeds", "[nn][grad]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = make_stream(seed, 10);
        Network net;
        net.add(std::make_unique<Dense>(5, 4, rng))
            .add(std::make_unique<ReLU>())
            .add(std::make_unique<Dense>(4, 3, rng))
            .add(std::make_unique<Softmax>());
        Tensor x({5});
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (auto& v : x.data) v = d(rng);
        check_gradients(net, x, rng);
    }
}

TEST_CASE("conv/pool gradients match finite differences over 20 seeds", "[nn][grad]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = make_stream(seed, 11);
        Network net;
        net.add(std::make_unique<Conv2d>(2, 3, 3, rng))
            .add(std::make_unique<ReLU>())
            .add(std::make_unique<AvgPool>(2, 2, seed % 2 == 0))
            .add(std::make_unique<Dense>(seed % 2 == 0 ? 4 : 12, 2, rng));
        Tensor x({2, 5, 5});
        std::uniform_real_distribution<double> d(-1.5, 1.5);
        for (auto& v : x.data) v = d(rng);
        check_gradients(net, x, rng);
    }
}

TEST_CASE("backward without forward reports the missing cache", "[nn]") {
    Rng rng = make_stream(3, 0);
    Network net;
    net.add(std::make_unique<Dense>(2, 2, rng));
    CHECK_THROWS_AS(net.backward(Tensor({2})), MissingCache);
}

TEST_CASE("zero output gradient leaves zero parameter gradients", "[nn]") {
    Rng rng = make_stream(4, 0);
    Network net;
    net.add(std::make_unique<Conv2d>(1, 2, 3, rng)).add(std::make_unique<ReLU>());
    Tensor x({1, 3, 3});
    for (std::size_t i = 0; i < x.size(); ++i) x.data[i] = static_cast<double>(i) - 4.0;
    net.forward(x);
    net.backward(Tensor({2, 3, 3}));
    CHECK(net.grad_norm_sq() == 0.0);
}

TEST_CASE("dense weight gradient is the outer product", "[nn]") {
    Rng rng = make_stream(5, 0);
    Network net;
    net.add(std::make_unique<Dense>(2, 2, rng));
    net.forward(Tensor({2}, {3.0, -1.0}));
    net.backward(Tensor({2}, {2.0, 5.0}));
    ParamVector g;
    net.export_grads(g);
    // rows of dW are dy_o * x, then the bias picks up dy
    CHECK(g == ParamVector{6.0, -2.0, 15.0, -5.0, 2.0, 5.0});
}

TEST_CASE("an sgd step with zero rate changes nothing", "[nn]") {
    Rng rng = make_stream(6, 0);
    Network net;
    net.add(std::make_unique<Dense>(3, 3, rng));
    ParamVector before;
    net.export_params(before);
    net.forward(Tensor({3}, {1.0, 2.0, 3.0}));
    net.backward(Tensor({3}, {1.0, 1.0, 1.0}));
    net.sgd_step(0.0);
    ParamVector after;
    net.export_params(after);
    CHECK(before == after);
}

TEST_CASE("one sgd step on w^2 from w=1 lands on 0.8", "[nn]") {
    Rng rng = make_stream(7, 0);
    Network net;
    net.add(std::make_unique<Dense>(1, 1, rng));
    net.import_params({1.0, 0.0}, 0);
    Tensor y = net.forward(Tensor({1}, {1.0}));
    net.backward(Tensor({1}, {2.0 * y.data[0]}));  // d(w^2)/dw with x=1, b=0
    net.sgd_step(0.1);
    ParamVector p;
    net.export_params(p);
    CHECK(p[0] == Catch::Approx(0.8).margin(1e-15));
}

TEST_CASE("sgd on a convex quadratic decays geometrically to optimum", "[nn]") {
    Rng rng = make_stream(8, 0);
    Network net;
    net.add(std::make_unique<Dense>(1, 1, rng));
    net.import_params({0.0, 0.0}, 0);
    const double target = 3.0, lr = 0.1;
    // residual contracts by (1 - 2*lr*(x^2+1)) per step with x = 1
    double expect_resid = 0.0 - target;
    for (int k = 0; k < 60; ++k) {
        Tensor y = net.forward(Tensor({1}, {1.0}));
        const double resid = y.data[0] - target;
        CHECK(rel_err(resid, expect_resid) < 1e-9);
        net.backward(Tensor({1}, {2.0 * resid}));
        net.sgd_step(lr);
        expect_resid *= 1.0 - 4.0 * lr;
    }
    Tensor y = net.forward(Tensor({1}, {1.0}));
    CHECK(std::abs(y.data[0] - target) < 1e-6);
}

TEST_CASE("export/import round trip is lossless", "[nn]") {
    Rng rng = make_stream(9, 0);
    Network net;
    net.add(std::make_unique<Conv2d>(2, 4, 3, rng))
        .add(std::make_unique<ReLU>())
        .add(std::make_unique<AvgPool>(3, 3))
        .add(std::make_unique<Dense>(36, 5, rng))
        .add(std::make_unique<Softmax>());
    ParamVector v;
    net.export_params(v);
    net.import_params(v, 0);
    ParamVector w;
    net.export_params(w);
    CHECK(v == w);

    Network other = net;
    other.import_params(v, 0);
    Tensor x({2, 6, 6});
    for (std::size_t i = 0; i < x.size(); ++i) x.data[i] = 0.1 * static_cast<double>(i % 7);
    CHECK(net.forward(x).data == other.forward(x).data);
}

TEST_CASE("parameter count matches the architecture arithmetic", "[nn]") {
    Rng rng = make_stream(10, 0);
    Network net;
    net.add(std::make_unique<Conv2d>(2, 3, 3, rng));  // 2*3*9 + 3 = 57
    net.add(std::make_unique<Dense>(10, 4, rng));     // 10*4 + 4 = 44
    CHECK(net.param_count() == 101);
    ParamVector v;
    net.export_params(v);
    CHECK(v.size() == 101);
    CHECK_THROWS(net.import_params(ParamVector(100), 0));
}

TEST_CASE("seeded initialization is reproducible", "[nn]") {
    auto build = [] {
        Rng rng = make_stream(77, 5);
        Network net;
        net.add(std::make_unique<Dense>(6, 4, rng)).add(std::make_unique<Dense>(4, 2, rng));
        ParamVector v;
        net.export_params(v);
        return v;
    };
    CHECK(build() == build());
}

TEST_CASE("squared gradient norm agrees with the flat dot product", "[nn]") {
    Rng rng = make_stream(12, 0);
    Network net;
    net.add(std::make_unique<Dense>(1, 1, rng));
    CHECK(net.grad_norm_sq() == 0.0);
    net.forward(Tensor({1}, {0.75}));
    net.backward(Tensor({1}, {4.0}));  // grads: dw = 3, db = 4
    CHECK(net.grad_norm_sq() == Catch::Approx(25.0));

    Network big;
    big.add(std::make_unique<Dense>(7, 5, rng)).add(std::make_unique<ReLU>())
        .add(std::make_unique<Dense>(5, 3, rng));
    Tensor x({7});
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& v : x.data) v = d(rng);
    big.forward(x);
    Tensor dy({3}, {1.0, -2.0, 0.5});
    big.backward(dy);
    ParamVector g;
    big.export_grads(g);
    CHECK(big.grad_norm_sq() == Catch::Approx(dot(g, g)).epsilon(1e-12));
}

TEST_CASE("parameter checkpoints round trip bit-exactly", "[nn]") {
    Rng rng = make_stream(13, 0);
    Network net;
    net.add(std::make_unique<Dense>(8, 3, rng));
    ParamVector v;
    net.export_params(v);
    const auto hash = fnv1a(net.describe());
    const auto path = std::filesystem::temp_directory_path() / "agemec_ckpt_test.params";
    save_params(path, v, hash);
    CHECK(load_params(path, hash) == v);
    CHECK_THROWS_AS(load_params(path, hash + 1), CheckpointError);
    std::filesystem::remove(path);
}
