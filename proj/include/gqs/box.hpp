#pragma once

#include <array>
#include <memory>
#include <vector>

#include "gqs/model.hpp"

namespace gqs {

// Small periodic box backend (N = 3 only): demonstrates the genuinely
// 1-periodic potentials that the radial backend cannot carry. Side length L
// is an integer so the unit-periodic V is commensurate with the box.
class BoxGrid {
public:
    BoxGrid(int cells_per_side, int side_length);

    int m() const { return m_; }
    int side_length() const { return length_; }
    double h() const { return h_; }
    double cell_volume() const { return h_ * h_ * h_; }
    int size() const { return m_ * m_ * m_; }
    int index(int i, int j, int k) const {
        return (wrap(i) * m_ + wrap(j)) * m_ + wrap(k);
    }
    std::array<double, 3> node(int i, int j, int k) const {
        return {i * h_, j * h_, k * h_};
    }

private:
    int wrap(int i) const { return ((i % m_) + m_) % m_; }
    int m_;
    int length_;
    double h_;
};

using BoxPtr = std::shared_ptr<const BoxGrid>;

struct BoxField {
    BoxPtr grid;
    std::vector<double> v;

    static BoxField zeros(BoxPtr grid);
};

BoxField sample_potential(BoxPtr grid, const Potential& potential);
BoxField box_laplacian(const BoxField& f);  // 7-point periodic stencil, returns Delta v
double box_integrate(const BoxField& f);
double box_norm_L2_sq(const BoxField& f);
double box_grad_sq(const BoxField& f);
double box_e_norm_sq(const BoxField& f, const BoxField& potential);

// Z^3 translation mirroring the paper's recentering: circularly shifts the
// field so the cell with the largest |v|^2 mass moves to the origin. Integer
// translations leave periodic-V energies invariant when m is a multiple of L.
BoxField recenter_to_peak(const BoxField& f);

}  // namespace gqs
