#include "maskrl/render.hpp"
#include "maskrl/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace maskrl;

namespace {

// Camera at the origin looking along +x, image-right = -y, image-down = -z.
CameraModel forward_camera(int w = 160, int h = 120, double f = 200.0) {
  CameraModel cam;
  cam.width = w;
  cam.height = h;
  cam.focal_length = f;
  cam.cx = w / 2.0;
  cam.cy = h / 2.0;
  Mat3 axes;
  axes.col(0) = -Vec3::UnitY();
  axes.col(1) = -Vec3::UnitZ();
  axes.col(2) = Vec3::UnitX();
  cam.pose = make_transform(axes, Vec3::Zero());
  return cam;
}

Scene empty_scene() {
  Scene s;
  s.table_region = Rect{0.0, 0.0, 0.0, 0.0};  // degenerate: no table hits
  s.table_z = -10.0;
  return s;
}

PlacedObject sphere_at(const Vec3& p, double r, const Vec3& color = Vec3(0.9, 0.05, 0.05)) {
  PlacedObject o;
  o.shape = Shape::sphere;
  o.position = p;
  o.radius = r;
  o.color = color;
  return o;
}

}  // namespace

TEST_CASE("project_point maps the optical axis to the principal point") {
  const CameraModel cam = forward_camera();
  const auto px = project_point(cam, Vec3(1.0, 0.0, 0.0));
  REQUIRE(px.has_value());
  REQUIRE(px->x() == Catch::Approx(cam.cx).margin(1e-12));
  REQUIRE(px->y() == Catch::Approx(cam.cy).margin(1e-12));
}

TEST_CASE("project_point substitution example") {
  CameraModel cam;
  cam.width = 200;
  cam.height = 200;
  cam.focal_length = 100.0;
  cam.cx = 100.0;
  cam.cy = 100.0;
  cam.pose = Transform::Identity();  // camera frame == world frame
  const auto px = project_point(cam, Vec3(0.1, 0.0, 1.0));
  REQUIRE(px.has_value());
  REQUIRE(px->x() == Catch::Approx(110.0).margin(1e-12));
  REQUIRE(px->y() == Catch::Approx(100.0).margin(1e-12));
}

TEST_CASE("project_point returns none behind the camera") {
  const CameraModel cam = forward_camera();
  REQUIRE(!project_point(cam, Vec3(-1.0, 0.0, 0.0)).has_value());
  REQUIRE(!project_point(cam, Vec3(0.0, 0.0, 0.0)).has_value());
}

TEST_CASE("project_point matches a homogeneous-matrix oracle") {
  CameraModel cam = forward_camera(320, 240, 250.0);
  cam.pose = make_transform(
      Eigen::AngleAxisd(0.4, Vec3(0.2, 0.9, 0.1).normalized()).toRotationMatrix(),
      Vec3(0.3, -0.2, 0.5));
  Rng rng = make_rng(17);

  // oracle: build the 3x4 projection matrix K [R|t] from the inverse pose
  Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
  K(0, 0) = K(1, 1) = cam.focal_length;
  K(0, 2) = cam.cx;
  K(1, 2) = cam.cy;
  const Transform world_to_cam = cam.pose.inverse();
  Eigen::Matrix<double, 3, 4> P = K * world_to_cam.matrix().topRows<3>();

  for (int i = 0; i < 500; ++i) {
    const Vec3 w(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0),
                 uniform(rng, -2.0, 2.0));
    const Eigen::Vector4d wh(w.x(), w.y(), w.z(), 1.0);
    const Vec3 proj = P * wh;
    const auto got = project_point(cam, w);
    if (proj.z() <= 0.0) {
      REQUIRE(!got.has_value());
    } else {
      REQUIRE(got.has_value());
      REQUIRE(std::abs(got->x() - proj.x() / proj.z()) < 1e-9);
      REQUIRE(std::abs(got->y() - proj.y() / proj.z()) < 1e-9);
    }
  }
}

TEST_CASE("empty scene renders uniform background") {
  const CameraModel cam = forward_camera(64, 48);
  const Scene scene = empty_scene();
  const Image img = render_rgb(scene, cam);
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x)
      for (int ch = 0; ch < 3; ++ch)
        REQUIRE(img.at(ch, y, x) ==
                Catch::Approx(scene.background_color[ch]).margin(1e-6));
}

TEST_CASE("axial sphere renders a centered disc") {
  const CameraModel cam = forward_camera(160, 120, 150.0);
  Scene scene = empty_scene();
  scene.objects.push_back(sphere_at(Vec3(0.6, 0.0, 0.0), 0.08));
  const RenderResult r = render_frame(scene, cam, 0);

  REQUIRE(r.mask.count() > 0);
  // centroid of the mask sits at the principal point
  double su = 0.0, sv = 0.0;
  for (int y = 0; y < r.mask.h; ++y)
    for (int x = 0; x < r.mask.w; ++x)
      if (r.mask.at(y, x)) {
        su += x + 0.5;
        sv += y + 0.5;
      }
  su /= static_cast<double>(r.mask.count());
  sv /= static_cast<double>(r.mask.count());
  REQUIRE(su == Catch::Approx(cam.cx).margin(0.5));
  REQUIRE(sv == Catch::Approx(cam.cy).margin(0.5));

  // red channel dominates inside the disc
  for (int y = 0; y < r.mask.h; ++y)
    for (int x = 0; x < r.mask.w; ++x)
      if (r.mask.at(y, x)) REQUIRE(r.rgb.at(0, y, x) > r.rgb.at(1, y, x));
}

TEST_CASE("sphere silhouette area matches the analytic disc") {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = uniform(rng, 0.04, 0.10);
    const double z = uniform(rng, 0.35, 0.8);
    const CameraModel cam = forward_camera(320, 240, 240.0);
    Scene scene = empty_scene();
    scene.objects.push_back(sphere_at(Vec3(z, 0.0, 0.0), r));
    const Mask mask = silhouette_mask(scene, cam, 0);

    const double disc_radius =
        cam.focal_length * r / std::sqrt(z * z - r * r);
    const double analytic = M_PI * disc_radius * disc_radius;
    REQUIRE(static_cast<double>(mask.count()) ==
            Catch::Approx(analytic).epsilon(0.02));
  }
}

TEST_CASE("silhouette is empty when the target is behind the camera") {
  const CameraModel cam = forward_camera();
  Scene scene = empty_scene();
  scene.objects.push_back(sphere_at(Vec3(-0.5, 0.0, 0.0), 0.05));
  REQUIRE(silhouette_mask(scene, cam, 0).count() == 0);
}

TEST_CASE("silhouette respects occlusion by a nearer object") {
  const CameraModel cam = forward_camera();
  Scene scene = empty_scene();
  scene.objects.push_back(sphere_at(Vec3(1.0, 0.0, 0.0), 0.04));  // target
  scene.objects.push_back(sphere_at(Vec3(0.5, 0.0, 0.0), 0.10,
                                    Vec3(0.1, 0.1, 0.9)));  // occluder
  REQUIRE(silhouette_mask(scene, cam, 0).count() == 0);
  // and the occluder itself is visible
  REQUIRE(silhouette_mask(scene, cam, 1).count() > 0);
}

TEST_CASE("mask pixels agree with target-colored pixels on a clean render") {
  const CameraModel cam = forward_camera(160, 120, 140.0);
  Scene scene = empty_scene();
  scene.objects.push_back(sphere_at(Vec3(0.5, 0.05, -0.02), 0.06));
  const RenderResult r = render_frame(scene, cam, 0);

  size_t reddish = 0;
  for (int y = 0; y < r.rgb.h; ++y)
    for (int x = 0; x < r.rgb.w; ++x)
      if (r.rgb.at(0, y, x) > 2.0f * r.rgb.at(1, y, x) &&
          r.rgb.at(0, y, x) > 0.1f)
        reddish++;
  REQUIRE(reddish == r.mask.count());
}

TEST_CASE("mask area shrinks monotonically with distance") {
  Rng rng = make_rng(31);
  const CameraModel cam = forward_camera(160, 120, 140.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double z1 = uniform(rng, 0.3, 1.0);
    const double z2 = uniform(rng, z1 + 0.05, 1.5);
    Scene scene = empty_scene();
    scene.objects.push_back(sphere_at(Vec3(z1, 0.0, 0.0), 0.05));
    const size_t near_count = silhouette_mask(scene, cam, 0).count();
    scene.objects[0].position.x() = z2;
    const size_t far_count = silhouette_mask(scene, cam, 0).count();
    REQUIRE(near_count > far_count);
  }
}

TEST_CASE("doubling resolution quadruples the mask area within tolerance") {
  Scene scene = empty_scene();
  scene.objects.push_back(sphere_at(Vec3(0.5, 0.01, 0.02), 0.05));
  const CameraModel lo = forward_camera(160, 120, 140.0);
  CameraModel hi = forward_camera(320, 240, 280.0);
  const double a_lo = static_cast<double>(silhouette_mask(scene, lo, 0).count());
  const double a_hi = static_cast<double>(silhouette_mask(scene, hi, 0).count());
  REQUIRE(a_hi == Catch::Approx(4.0 * a_lo).epsilon(0.05));
}

TEST_CASE("rendering is deterministic") {
  const CameraModel cam = forward_camera(80, 60, 70.0);
  Scene scene = empty_scene();
  scene.table_region = Rect{0.2, 1.0, -0.5, 0.5};
  scene.table_z = -0.3;
  scene.objects.push_back(sphere_at(Vec3(0.5, 0.1, -0.1), 0.05));
  PlacedObject box;
  box.shape = Shape::box;
  box.position = Vec3(0.6, -0.15, -0.25);
  box.radius = 0.05;
  box.color = Vec3(0.1, 0.8, 0.2);
  scene.objects.push_back(box);

  const RenderResult a = render_frame(scene, cam, 0);
  const RenderResult b = render_frame(scene, cam, 0);
  REQUIRE(a.rgb.data == b.rgb.data);
  REQUIRE(a.mask.bits == b.mask.bits);
  REQUIRE(a.hit_ids == b.hit_ids);
}

TEST_CASE("table plane and box are hit-tested") {
  const CameraModel cam = forward_camera(80, 60, 70.0);
  Scene scene;
  scene.table_region = Rect{0.1, 2.0, -1.0, 1.0};
  scene.table_z = -0.2;
  PlacedObject box;
  box.shape = Shape::box;
  box.position = Vec3(0.7, 0.0, -0.15);
  box.radius = 0.05;
  box.color = Vec3(0.1, 0.2, 0.9);
  scene.objects.push_back(box);

  const RenderResult r = render_frame(scene, cam, 0);
  bool saw_table = false, saw_box = false;
  for (int id : r.hit_ids) {
    if (id == -2) saw_table = true;
    if (id == 0) saw_box = true;
  }
  REQUIRE(saw_table);
  REQUIRE(saw_box);
  // every activated mask pixel's ray hits the box first (mask == visibility)
  for (int y = 0; y < r.mask.h; ++y)
    for (int x = 0; x < r.mask.w; ++x)
      REQUIRE((r.mask.at(y, x) == 1) ==
              (r.hit_ids[static_cast<size_t>(y) * r.mask.w + x] == 0));
}
