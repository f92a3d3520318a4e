package fix;

public class Sphere extends Circle {
    public Sphere(double radius) {
        super(radius);
    }

    @Override
    public double area() {
        return 4.0 * super.area();
    }
}
