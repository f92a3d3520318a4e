package fix;

public class Circle extends Shape {
    private double radius;

    public Circle(double radius) {
        this.radius = radius;
    }

    @Override
    public double area() {
        return 3.14159 * radius * radius;
    }

    public double scale(double factor) {
        if (factor < 0 || factor > 100) {
            throw new IllegalArgumentException(describe());
        }
        radius = radius * factor;
        return area();
    }
}
