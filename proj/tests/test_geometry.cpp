#include <random>

#include <doctest.h>

#include "lbf/geometry.hpp"

using namespace lbf;

namespace {

Rotation rot_z(double a) { return exp_map(Vec3(0, 0, a)); }
Rotation rot_x(double a) { return exp_map(Vec3(a, 0, 0)); }

Rotation random_rotation(std::mt19937& rng) {
    std::normal_distribution<double> n;
    Vec3 v(n(rng), n(rng), n(rng));
    std::uniform_real_distribution<double> a(0.0, M_PI);
    return exp_map(v.normalized() * a(rng));
}

}  // namespace

TEST_CASE("hat basics") {
    CHECK(hat(Vec3::Zero()).isZero(0.0));
    CHECK((hat(Vec3(0, 0, 1)) * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() == doctest::Approx(0.0));

    std::mt19937 rng(7);
    std::normal_distribution<double> n;
    for (int i = 0; i < 100; ++i) {
        const Vec3 v(n(rng), n(rng), n(rng));
        const Vec3 w(n(rng), n(rng), n(rng));
        const Mat3 m = hat(v);
        CHECK((m + m.transpose()).norm() == doctest::Approx(0.0));
        CHECK((m * w - v.cross(w)).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("vee inverts hat") {
    CHECK(vee(Mat3::Zero()).isZero(0.0));
    const Vec3 v(-1.0, 4.0, 0.5);
    CHECK((vee(hat(v)) - v).norm() == doctest::Approx(0.0));
    CHECK((vee(hat(Vec3(1, 2, 3))) - Vec3(1, 2, 3)).norm() == doctest::Approx(0.0));

    // closed-form axis-angle expansion: vee(0.5 (R - R^T)) = sin(a) axis
    const Rotation r = rot_z(M_PI / 6.0);
    const Vec3 got = vee(0.5 * (r - Mat3(r.transpose())));
    CHECK(got.x() == doctest::Approx(0.0));
    CHECK(got.y() == doctest::Approx(0.0));
    CHECK(got.z() == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(vee(Mat3::Identity()), NotSkew);
}

TEST_CASE("rotation distance") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Rotation r = random_rotation(rng);
        CHECK(rotation_distance(r, r) == doctest::Approx(0.0).epsilon(1e-12));
        const Rotation r2 = random_rotation(rng);
        CHECK(rotation_distance(r, r2) == doctest::Approx(rotation_distance(r2, r)));
        CHECK(rotation_distance(r, r2) >= -1e-12);
        CHECK(rotation_distance(r, r2) <= 2.0 + 1e-12);
    }
    CHECK(rotation_distance(Mat3::Identity(), rot_z(M_PI)) == doctest::Approx(2.0));
    // d(I, Rx(pi/2)) = 1/2 tr(I - Rx(pi/2)) = 1/2 (3 - (1 + 0 + 0) - ...) = 1
    CHECK(rotation_distance(Mat3::Identity(), rot_x(M_PI / 2.0)) == doctest::Approx(1.0));
}

TEST_CASE("attitude error") {
    std::mt19937 rng(13);
    const Rotation r = random_rotation(rng);
    CHECK(attitude_error(r, r).norm() == doctest::Approx(0.0));

    // pure yaw offset: e_R ~ [0, 0, sin theta]
    const double theta = 0.01;
    const Rotation rd = random_rotation(rng);
    const Vec3 e = attitude_error(rd * rot_z(theta), rd);
    CHECK(e.z() == doctest::Approx(std::sin(theta)).epsilon(1e-9));
    CHECK(e.head<2>().norm() == doctest::Approx(0.0).epsilon(1e-12));

    for (int i = 0; i < 50; ++i) {
        const Rotation r1 = random_rotation(rng);
        const Rotation r2 = random_rotation(rng);
        CHECK((attitude_error(r1, r2) + attitude_error(r2, r1)).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(attitude_error(r1, r2).norm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("angular velocity error") {
    std::mt19937 rng(17);
    std::normal_distribution<double> n;
    const Vec3 w(n(rng), n(rng), n(rng));
    const Rotation r = random_rotation(rng);
    CHECK(angular_velocity_error(w, r, r, w).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((angular_velocity_error(w, r, random_rotation(rng), Vec3::Zero()) - w).norm() ==
          doctest::Approx(0.0));

    // double-computation oracle via explicit matrix products
    for (int i = 0; i < 20; ++i) {
        const Vec3 omega(n(rng), n(rng), n(rng));
        const Vec3 omega_d(n(rng), n(rng), n(rng));
        const Rotation r1 = random_rotation(rng);
        const Rotation r2 = random_rotation(rng);
        Vec3 expected = omega;
        const Mat3 rel = r1.transpose() * r2;
        for (int k = 0; k < 3; ++k) {
            expected[k] -= rel.row(k).dot(omega_d);
        }
        CHECK((angular_velocity_error(omega, r1, r2, omega_d) - expected).norm() ==
              doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("rodrigues rotation") {
    const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
    CHECK((rodrigues(e3, e1, 0.0) - e3).norm() == doctest::Approx(0.0));
    CHECK((rodrigues(e3, e1, M_PI / 2.0) + e2).norm() == doctest::Approx(0.0).epsilon(1e-15));

    // the angle to the start vector equals theta
    for (double theta = 0.05; theta < M_PI / 2.0; theta += 0.05) {
        const Vec3 out = rodrigues(e3, e2, theta);
        CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::acos(std::clamp(out.dot(e3), -1.0, 1.0)) ==
              doctest::Approx(theta).epsilon(1e-12));
    }
}

TEST_CASE("exp/log roundtrip") {
    CHECK(log_map(Mat3::Identity()).norm() == doctest::Approx(0.0));
    CHECK((log_map(rot_z(0.3)) - Vec3(0, 0, 0.3)).norm() == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Vec3 axis(u(rng), u(rng), u(rng));
        if (axis.norm() < 1e-6) axis = Vec3::UnitX();
        axis.normalize();
        std::uniform_real_distribution<double> a(0.0, M_PI);
        const Rotation r = exp_map(axis * a(rng));
        CHECK((exp_map(log_map(r)) - r).norm() < 1e-8);
    }

    // angle pi: any valid axis accepted
    for (const Vec3& axis : {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0.6, 0.0, 0.8)}) {
        const Rotation r = exp_map(axis * M_PI);
        CHECK((exp_map(log_map(r)) - r).norm() < 1e-8);
    }
}

TEST_CASE("orthonormality maintenance") {
    std::mt19937 rng(23);
    Rotation r = Mat3::Identity();
    for (int i = 0; i < 2000; ++i) {
        r = r * random_rotation(rng);
        restore_rotation(r);
    }
    CHECK(orthonormality_error(r) < 1e-9);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-9));

    // polar projection recovers a deliberately perturbed matrix
    Mat3 dirty = random_rotation(rng);
    dirty(0, 1) += 1e-4;
    Rotation clean = orthonormalized(dirty);
    CHECK(orthonormality_error(clean) < 1e-12);
    CHECK(clean.determinant() == doctest::Approx(1.0));
}
