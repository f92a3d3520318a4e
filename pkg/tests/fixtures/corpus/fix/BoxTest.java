package fix;

import org.junit.Test;

public class BoxTest {
    private final Box box = new Box(3);

    @Test
    public void testGrow() {
        int result = box.grow(2);
        assertEquals(5, result);
        assertTrue(result > 0);
    }

    @Test
    public void testGrowTwice() {
        box.grow(1);
        box.grow(1);
        assertEquals(7, box.grow(0));
    }
}
