#pragma once

#include <string>
#include <vector>

#include "svr/camera.hpp"
#include "svr/image.hpp"

namespace svr {

struct DatasetFrame {
    std::string name;
    Camera cam;
    Image image;  // W x H x 3, linear intensities in [0, 1]
};

struct Dataset {
    std::vector<DatasetFrame> frames;
};

}  // namespace svr
