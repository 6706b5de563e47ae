// Simulates a disc phantom seen from a 120 degree sector and evaluates
// the spectral reconstruction f_j along the x axis.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "illposed/radon.hpp"

int main()
{
    using namespace illposed::radon;
    const double pi = std::numbers::pi;
    const Phantom ph({{{0.2, 0.1}, 0.5, 1.0}}, 1.0);
    const AngularSector sector(pi / 6.0, 5.0 * pi / 6.0, 512);
    const auto sino = radon_transform(ph, sector, 257);

    std::vector<P2> line;
    for (int i = 0; i <= 20; ++i)
        line.push_back({-1.0 + 0.1 * i, 0.1});
    for (int j : {1, 2, 4}) {
        const auto cfg = cone_config(sector, 8.0, j, 1.0);
        const auto res = limited_angle_reconstruct(sino, cfg, 8.0, line, 32);
        std::printf("j=%d  amplification 10^%.1f\n   x    f    Re f_j\n", j, res.log10_amplification);
        for (std::size_t i = 0; i < line.size(); i += 4)
            std::printf("%5.1f %4.1f %8.4f\n", line[i][0], ph(line[i]), res.values[i].real());
    }
}
