package fix;

public class Empty {
}
